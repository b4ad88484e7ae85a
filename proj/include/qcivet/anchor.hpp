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

// External append-only anchor for chain heads.
//
// File format, one entry per line, UTF-8, newline-terminated:
//
//   <seq>\t<64 lowercase hex>\t<timestamp_ms>\n
//
// Sequence numbers start at 0 and have no gaps. Lines are never rewritten.
//
// Anchor is the extension point: a networked transparency-log client only
// has to implement submit() and entries().

#pragma once

#include <cstdint>
#include <functional>
#include <mutex>
#include <string>
#include <vector>

#include "qcivet/auditchain.hpp"

namespace qcivet {

struct AnchorEntry {
  std::uint64_t seq = 0;
  std::string head;
  std::int64_t timestamp_ms = 0;

  friend bool operator==(const AnchorEntry&, const AnchorEntry&) = default;
};

/// Milliseconds since the Unix epoch.
using Clock = std::function<std::int64_t()>;
Clock system_clock_ms();

class Anchor {
 public:
  virtual ~Anchor() = default;

  /// Appends `head` and returns its sequence number. Malformed heads throw
  /// InvalidArgument; storage failures throw AnchorUnavailable.
  virtual std::uint64_t submit(const std::string& head) = 0;

  /// Snapshot of all entries in sequence order. Throws AnchorUnavailable
  /// when the backing store cannot be read.
  virtual std::vector<AnchorEntry> entries() const = 0;
};

/// Anchor held in memory. Used by the latency bench and tests.
class MemoryAnchor : public Anchor {
 public:
  explicit MemoryAnchor(Clock clock = system_clock_ms());

  std::uint64_t submit(const std::string& head) override;
  std::vector<AnchorEntry> entries() const override;

 private:
  Clock clock_;
  mutable std::mutex mu_;
  std::vector<AnchorEntry> entries_;
};

/// Anchor backed by an append-only file. Writers take an exclusive flock
/// around read-last-seq + append, so several processes may share a file.
/// Readers skip a trailing line with no newline (an append in flight).
class FileAnchor : public Anchor {
 public:
  /// The file is created on first submit if it does not exist.
  explicit FileAnchor(std::string path, Clock clock = system_clock_ms());

  std::uint64_t submit(const std::string& head) override;
  std::vector<AnchorEntry> entries() const override;

  const std::string& path() const noexcept { return path_; }

  /// Parses anchor file content. Complete lines that do not match the
  /// format, or break the sequence, throw AnchorUnavailable.
  static std::vector<AnchorEntry> parse(const std::string& content);

  /// One formatted line including the trailing newline.
  static std::string format_line(const AnchorEntry& e);

 private:
  std::string path_;
  Clock clock_;
};

enum class AnchorStatus { kOk, kNotContiguous, kAbsent };

/// "ok", "not-contiguous" or "absent".
std::string to_string(AnchorStatus status);

/// ok iff the chain heads h_1..h_n occur as a strictly adjacent block of
/// anchor entries, in order. Consecutive duplicate anchor entries (a retried
/// submit) count once. absent when any head is missing from the anchor;
/// not-contiguous when all are present but not as one block. An empty log
/// is vacuously ok.
AnchorStatus verify_against_anchor(const std::vector<AnchorEntry>& anchor,
                                   const AuditLog& log);
AnchorStatus verify_against_anchor(const Anchor& anchor, const AuditLog& log);

}  // namespace qcivet
