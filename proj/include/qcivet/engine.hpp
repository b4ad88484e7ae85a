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

// Real-time integrity verifier. Each stage commit runs, in order:
//
//   1. observable checks  |measured - reference| <= tolerance   (kind=observable)
//   2. h_i = H(h_{i-1} || canonical(spec))
//   3. in-memory head == hash of last persisted record          (kind=hash)
//      then append
//   4. submit h_i to the anchor                                 (kind=anchor)
//
// A failure in 1 or 3 leaves the log and the anchor untouched. A failure in
// 4 keeps the appended record and marks the head as un-anchored.

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcivet/anchor.hpp"
#include "qcivet/auditchain.hpp"

namespace qcivet {

struct ObservableCheck {
  std::string label;
  double measured = 0.0;
  double reference = 0.0;
  double tolerance = 0.0;

  double deviation() const { return measured > reference ? measured - reference
                                                          : reference - measured; }
  bool passes() const { return deviation() <= tolerance; }
};

struct StageResult {
  std::string name;
  StageSpec spec;
  std::vector<ObservableCheck> observables;
};

enum class ViolationKind { kHash, kObservable, kAnchor };

/// "hash", "observable" or "anchor".
std::string to_string(ViolationKind kind);

class IntegrityViolation : public std::runtime_error {
 public:
  IntegrityViolation(ViolationKind kind, std::size_t stage_index, std::string message);

  ViolationKind kind() const noexcept { return kind_; }
  std::size_t stage_index() const noexcept { return stage_index_; }
  const std::string& message() const noexcept { return message_; }

 private:
  ViolationKind kind_;
  std::size_t stage_index_;
  std::string message_;
};

class IntegrityVerifier {
 public:
  /// Throws InvalidArgument on a null anchor.
  explicit IntegrityVerifier(std::shared_ptr<Anchor> anchor);

  /// Runs the four-step commit. Throws IntegrityViolation on failure and
  /// InvalidArgument for a malformed StageResult (empty name, negative or
  /// non-finite tolerance, non-finite values).
  const ChainRecord& commit_stage(const StageResult& result);

  const AuditLog& log() const noexcept { return log_; }
  /// The persisted log, exposed so hosts and tests can replay attacks.
  AuditLog& mutable_log() noexcept { return log_; }

  /// In-memory head; diverges from log().head() only after external tampering.
  const std::string& head() const noexcept { return head_; }
  bool head_anchored() const noexcept { return head_anchored_; }
  /// Anchor sequence numbers returned for this verifier's commits.
  const std::vector<std::uint64_t>& anchor_sequence() const noexcept { return seqs_; }
  const Anchor& anchor() const noexcept { return *anchor_; }

  ChainVerification verify_full_chain() const;
  AnchorStatus verify_against_anchor() const;

 private:
  std::shared_ptr<Anchor> anchor_;
  AuditLog log_;
  std::string head_ = kGenesisHash;
  bool head_anchored_ = true;
  std::vector<std::uint64_t> seqs_;
};

// ---------------------------------------------------------------------------

struct LatencyStats {
  std::size_t samples = 0;
  double median_us = 0.0;
  double p99_us = 0.0;
  double mean_us = 0.0;
  double max_us = 0.0;

  bool empty() const noexcept { return samples == 0; }
  /// Nearest-rank percentiles over `us`. Empty input gives empty stats.
  static LatencyStats from_samples(std::vector<double> us);
};

struct BenchResult {
  std::size_t n_stages = 0;
  std::size_t reps = 0;
  LatencyStats per_commit;  // one sample per commit_stage call
  LatencyStats pipeline;    // one sample per n_stages-commit run
};

/// Runs `reps` synthetic pipelines of `n_stages` commits each against a
/// MemoryAnchor and times every commit. n_stages == 0 or reps == 0 gives
/// empty statistics.
BenchResult bench_commit(std::size_t n_stages, std::size_t reps);

}  // namespace qcivet
