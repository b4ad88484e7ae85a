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

// Hash-chained audit trail.
//
//   h_0 = "000…0" (64 ASCII zeros)
//   h_i = lowercase_hex(SHA-256(h_{i-1} as 64 ASCII hex chars ∥ canonical(spec_i)))
//
// The stage name is carried alongside each record but is not part of the
// preimage; pipelines put it in the spec under "name" when it must be
// protected.

#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "qcivet/canonical.hpp"

namespace qcivet {

inline const std::string kGenesisHash(64, '0');

struct ChainRecord {
  std::string stage_name;
  StageSpec spec;
  std::string prev_hash;
  std::string hash;
};

/// h_i from h_{i-1} and the spec.
std::string chain_hash(const std::string& prev_hash, const StageSpec& spec);

class AuditLog {
 public:
  /// Appends a record linked to the current head. Canonicalisation errors
  /// propagate and leave the log unchanged.
  const ChainRecord& append(std::string stage_name, StageSpec spec);

  /// Hash of the last record, or the genesis hash when empty.
  const std::string& head() const noexcept;

  std::size_t size() const noexcept { return records_.size(); }
  bool empty() const noexcept { return records_.empty(); }
  const std::vector<ChainRecord>& records() const noexcept { return records_; }

  /// Direct access for replaying attacks in tests and demos. Mutations here
  /// bypass every invariant; verify_full_chain is what catches them.
  std::vector<ChainRecord>& mutable_records() noexcept { return records_; }

 private:
  std::vector<ChainRecord> records_;
};

struct ChainVerification {
  enum class Reason { kNone, kRecomputedHashMismatch, kPrevHashLinkageBroken };

  bool ok = true;
  std::size_t index = 0;  // first failing record when !ok
  Reason reason = Reason::kNone;

  static ChainVerification success() { return {}; }
  static ChainVerification failure(std::size_t index, Reason reason) {
    return {false, index, reason};
  }
};

/// "ok", "recomputed-hash-mismatch" or "prev-hash-linkage-broken".
std::string to_string(ChainVerification::Reason reason);

/// Recomputes every hash from genesis. Linkage is checked before the
/// record's own hash, so a removed record reports a broken link.
ChainVerification verify_full_chain(const AuditLog& log);

// ---------------------------------------------------------------------------
// Attack scenarios on a committed chain.

enum class ChainScenario { kHonest, kTamper, kInject, kSkip };

std::string to_string(ChainScenario kind);
/// Throws InvalidArgument for an unknown name.
ChainScenario chain_scenario_from_string(const std::string& name);

using StageList = std::vector<std::pair<std::string, StageSpec>>;

/// Six-stage hybrid QPU pipeline: circuit_def, transpile, backend_sel,
/// calibration, execution, meas_output.
StageList default_chain_stages();

/// Default attack site per scenario: tamper 3, inject 3, skip 2.
std::size_t default_attack_site(ChainScenario kind);

/// Builds the honest chain over `base` and applies the attack at `site`:
///   tamper - record `site`'s spec is modified after commit;
///   inject - a fabricated record, correctly linked to its predecessor, is
///            spliced in at position `site`;
///   skip   - record `site` is removed.
/// Requires at least four stages and 0 < site < base.size() for attacks.
AuditLog build_scenario(ChainScenario kind, const StageList& base, std::size_t site);
AuditLog build_scenario(ChainScenario kind, const StageList& base);

/// Index verify_full_chain must report for an attack at `site`: the site
/// itself, or site + 1 for an injection.
std::size_t expected_failure_index(ChainScenario kind, std::size_t site);

// ---------------------------------------------------------------------------
// Export: one canonical JSON object per line with fields hash, name,
// prev_hash, spec.

void export_log(std::ostream& os, const AuditLog& log);

struct LoadedLog {
  AuditLog log;
  ChainVerification verification;
};

/// Parses an exported log and re-verifies it. Malformed lines throw
/// InvalidArgument; chain failures are reported in `verification`.
LoadedLog import_log(std::istream& is);

}  // namespace qcivet
