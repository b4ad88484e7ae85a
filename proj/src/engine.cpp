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

#include "qcivet/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qcivet/error.hpp"

namespace qcivet {

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kHash: return "hash";
    case ViolationKind::kObservable: return "observable";
    case ViolationKind::kAnchor: return "anchor";
  }
  return "unknown";
}

IntegrityViolation::IntegrityViolation(ViolationKind kind, std::size_t stage_index,
                                       std::string message)
    : std::runtime_error("IntegrityViolation(kind=" + to_string(kind) + ", stage=" +
                         std::to_string(stage_index) + "): " + message),
      kind_(kind),
      stage_index_(stage_index),
      message_(std::move(message)) {}

IntegrityVerifier::IntegrityVerifier(std::shared_ptr<Anchor> anchor)
    : anchor_(std::move(anchor)) {
  if (!anchor_) throw InvalidArgument("IntegrityVerifier: null anchor");
}

namespace {

void validate(const StageResult& r) {
  if (r.name.empty()) throw InvalidArgument("StageResult: empty name");
  for (const ObservableCheck& c : r.observables) {
    if (!std::isfinite(c.measured) || !std::isfinite(c.reference) ||
        !std::isfinite(c.tolerance) || c.tolerance < 0.0) {
      throw InvalidArgument("ObservableCheck '" + c.label +
                            "': values must be finite and tolerance >= 0");
    }
  }
}

}  // namespace

const ChainRecord& IntegrityVerifier::commit_stage(const StageResult& result) {
  validate(result);
  const std::size_t index = log_.size();

  for (const ObservableCheck& c : result.observables) {
    if (!c.passes()) {
      std::ostringstream msg;
      msg.precision(9);
      msg << "stage '" << result.name << "' observable '" << c.label
          << "': |" << c.measured << " - " << c.reference << "| = " << c.deviation()
          << " > " << c.tolerance;
      throw IntegrityViolation(ViolationKind::kObservable, index, msg.str());
    }
  }

  const std::string h = chain_hash(head_, result.spec);

  if (head_ != log_.head()) {
    throw IntegrityViolation(ViolationKind::kHash, index,
                             "stage '" + result.name +
                                 "': in-memory head does not match last persisted record");
  }
  const ChainRecord& rec = log_.append(result.name, result.spec);
  head_ = h;
  head_anchored_ = false;

  try {
    seqs_.push_back(anchor_->submit(h));
  } catch (const std::exception& e) {
    throw IntegrityViolation(ViolationKind::kAnchor, index,
                             "stage '" + result.name + "': anchor submit failed: " +
                                 e.what());
  }
  head_anchored_ = true;
  return rec;
}

ChainVerification IntegrityVerifier::verify_full_chain() const {
  return qcivet::verify_full_chain(log_);
}

AnchorStatus IntegrityVerifier::verify_against_anchor() const {
  return qcivet::verify_against_anchor(*anchor_, log_);
}

// ---------------------------------------------------------------------------

LatencyStats LatencyStats::from_samples(std::vector<double> us) {
  LatencyStats s;
  if (us.empty()) return s;
  std::sort(us.begin(), us.end());
  const std::size_t n = us.size();
  auto rank = [&](double q) {
    const auto r = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n)));
    return us[std::clamp<std::size_t>(r, 1, n) - 1];
  };
  s.samples = n;
  s.median_us = rank(0.5);
  s.p99_us = rank(0.99);
  s.mean_us = std::accumulate(us.begin(), us.end(), 0.0) / static_cast<double>(n);
  s.max_us = us.back();
  return s;
}

BenchResult bench_commit(std::size_t n_stages, std::size_t reps) {
  BenchResult out;
  out.n_stages = n_stages;
  out.reps = reps;
  if (n_stages == 0 || reps == 0) return out;

  std::vector<StageResult> stages;
  for (std::size_t k = 0; k < n_stages; ++k) {
    StageResult r;
    r.name = "stage_" + std::to_string(k);
    r.spec = StageSpec{{"name", r.name},
                       {"index", k},
                       {"backend", "bench"},
                       {"params", Json::array({0.25, 1.5, 3})}};
    r.observables.push_back({"obs", 0.01, 0.0, 0.05});
    stages.push_back(std::move(r));
  }

  using clock = std::chrono::steady_clock;
  std::vector<double> per_commit;
  std::vector<double> pipeline;
  per_commit.reserve(n_stages * reps);
  pipeline.reserve(reps);
  for (std::size_t rep = 0; rep < reps; ++rep) {
    IntegrityVerifier v(std::make_shared<MemoryAnchor>([] { return std::int64_t{0}; }));
    double total = 0.0;
    for (const StageResult& r : stages) {
      const auto t0 = clock::now();
      v.commit_stage(r);
      const auto t1 = clock::now();
      const double us = std::chrono::duration<double, std::micro>(t1 - t0).count();
      per_commit.push_back(us);
      total += us;
    }
    pipeline.push_back(total);
  }
  out.per_commit = LatencyStats::from_samples(std::move(per_commit));
  out.pipeline = LatencyStats::from_samples(std::move(pipeline));
  return out;
}

}  // namespace qcivet
