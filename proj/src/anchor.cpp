// Copyright 2026 The QCIVET Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qcivet/anchor.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <chrono>
#include <cstring>
#include <string_view>
#include <unordered_set>

#include "qcivet/error.hpp"

namespace qcivet {

namespace {

void require_head(const std::string& head) {
  if (!is_hex_digest(head)) {
    throw InvalidArgument("anchor: head must be 64 lowercase hex characters");
  }
}

std::string errno_text(const std::string& what, const std::string& path) {
  return what + " '" + path + "': " + std::strerror(errno);
}

// Closes the descriptor (and so drops any flock) on scope exit.
class Fd {
 public:
  explicit Fd(int fd) : fd_(fd) {}
  ~Fd() {
    if (fd_ >= 0) ::close(fd_);
  }
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;
  int get() const { return fd_; }

 private:
  int fd_;
};

std::string read_all(int fd, const std::string& path) {
  std::string out;
  char buf[8192];
  off_t off = 0;
  for (;;) {
    const ssize_t n = ::pread(fd, buf, sizeof buf, off);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw AnchorUnavailable(errno_text("anchor: cannot read", path));
    }
    if (n == 0) break;
    out.append(buf, static_cast<std::size_t>(n));
    off += n;
  }
  return out;
}

template <typename Int>
bool parse_int(std::string_view s, Int& out) {
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

Clock system_clock_ms() {
  return [] {
    using namespace std::chrono;
    return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
  };
}

// ---------------------------------------------------------------------------

MemoryAnchor::MemoryAnchor(Clock clock) : clock_(std::move(clock)) {}

std::uint64_t MemoryAnchor::submit(const std::string& head) {
  require_head(head);
  std::lock_guard lock(mu_);
  const std::uint64_t seq = entries_.size();
  entries_.push_back({seq, head, clock_()});
  return seq;
}

std::vector<AnchorEntry> MemoryAnchor::entries() const {
  std::lock_guard lock(mu_);
  return entries_;
}

// ---------------------------------------------------------------------------

FileAnchor::FileAnchor(std::string path, Clock clock)
    : path_(std::move(path)), clock_(std::move(clock)) {
  if (path_.empty()) throw InvalidArgument("FileAnchor: empty path");
}

std::string FileAnchor::format_line(const AnchorEntry& e) {
  return std::to_string(e.seq) + '\t' + e.head + '\t' + std::to_string(e.timestamp_ms) +
         '\n';
}

std::vector<AnchorEntry> FileAnchor::parse(const std::string& content) {
  std::vector<AnchorEntry> out;
  std::size_t pos = 0;
  while (pos < content.size()) {
    const std::size_t nl = content.find('\n', pos);
    if (nl == std::string::npos) break;  // append in flight
    const std::string_view line(content.data() + pos, nl - pos);
    pos = nl + 1;

    const std::size_t t1 = line.find('\t');
    const std::size_t t2 = t1 == std::string_view::npos ? t1 : line.find('\t', t1 + 1);
    AnchorEntry e;
    const bool well_formed =
        t2 != std::string_view::npos && parse_int(line.substr(0, t1), e.seq) &&
        is_hex_digest(line.substr(t1 + 1, t2 - t1 - 1)) &&
        parse_int(line.substr(t2 + 1), e.timestamp_ms);
    if (!well_formed) {
      throw AnchorUnavailable("anchor: malformed entry at line " +
                              std::to_string(out.size() + 1));
    }
    if (e.seq != out.size()) {
      throw AnchorUnavailable("anchor: sequence gap at line " +
                              std::to_string(out.size() + 1));
    }
    e.head = std::string(line.substr(t1 + 1, t2 - t1 - 1));
    out.push_back(std::move(e));
  }
  return out;
}

std::uint64_t FileAnchor::submit(const std::string& head) {
  require_head(head);
  Fd fd(::open(path_.c_str(), O_RDWR | O_CREAT | O_APPEND | O_CLOEXEC, 0644));
  if (fd.get() < 0) throw AnchorUnavailable(errno_text("anchor: cannot open", path_));
  while (::flock(fd.get(), LOCK_EX) != 0) {
    if (errno != EINTR) throw AnchorUnavailable(errno_text("anchor: cannot lock", path_));
  }

  const std::string content = read_all(fd.get(), path_);
  if (!content.empty() && content.back() != '\n') {
    // We hold the lock, so a torn tail is left by a writer that died.
    throw AnchorUnavailable("anchor: torn trailing line in '" + path_ + "'");
  }
  const std::uint64_t seq = parse(content).size();
  const std::string line = format_line({seq, head, clock_()});

  std::size_t done = 0;
  while (done < line.size()) {
    const ssize_t n = ::write(fd.get(), line.data() + done, line.size() - done);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw AnchorUnavailable(errno_text("anchor: cannot write", path_));
    }
    done += static_cast<std::size_t>(n);
  }
  return seq;
}

std::vector<AnchorEntry> FileAnchor::entries() const {
  Fd fd(::open(path_.c_str(), O_RDONLY | O_CLOEXEC));
  if (fd.get() < 0) {
    if (errno == ENOENT) return {};
    throw AnchorUnavailable(errno_text("anchor: cannot open", path_));
  }
  return parse(read_all(fd.get(), path_));
}

// ---------------------------------------------------------------------------

std::string to_string(AnchorStatus status) {
  switch (status) {
    case AnchorStatus::kOk: return "ok";
    case AnchorStatus::kNotContiguous: return "not-contiguous";
    case AnchorStatus::kAbsent: return "absent";
  }
  return "unknown";
}

AnchorStatus verify_against_anchor(const std::vector<AnchorEntry>& anchor,
                                   const AuditLog& log) {
  const auto& records = log.records();
  if (records.empty()) return AnchorStatus::kOk;

  std::vector<std::string_view> seq;
  seq.reserve(anchor.size());
  for (const AnchorEntry& e : anchor) {
    if (seq.empty() || seq.back() != e.head) seq.push_back(e.head);
  }

  const std::unordered_set<std::string_view> present(seq.begin(), seq.end());
  for (const ChainRecord& r : records) {
    if (!present.count(r.hash)) return AnchorStatus::kAbsent;
  }

  const std::size_t n = records.size();
  for (std::size_t i = 0; i + n <= seq.size(); ++i) {
    std::size_t k = 0;
    while (k < n && seq[i + k] == records[k].hash) ++k;
    if (k == n) return AnchorStatus::kOk;
  }
  return AnchorStatus::kNotContiguous;
}

AnchorStatus verify_against_anchor(const Anchor& anchor, const AuditLog& log) {
  return verify_against_anchor(anchor.entries(), log);
}

}  // namespace qcivet
