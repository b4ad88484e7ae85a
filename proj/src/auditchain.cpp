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

#include "qcivet/auditchain.hpp"

#include <istream>
#include <ostream>

#include "qcivet/error.hpp"

namespace qcivet {

std::string chain_hash(const std::string& prev_hash, const StageSpec& spec) {
  std::string preimage = prev_hash;
  preimage += canonicalize(spec);
  return sha256_hex(preimage);
}

const ChainRecord& AuditLog::append(std::string stage_name, StageSpec spec) {
  std::string prev = head();
  std::string hash = chain_hash(prev, spec);
  records_.push_back(
      {std::move(stage_name), std::move(spec), std::move(prev), std::move(hash)});
  return records_.back();
}

const std::string& AuditLog::head() const noexcept {
  return records_.empty() ? kGenesisHash : records_.back().hash;
}

std::string to_string(ChainVerification::Reason reason) {
  switch (reason) {
    case ChainVerification::Reason::kNone:
      return "ok";
    case ChainVerification::Reason::kRecomputedHashMismatch:
      return "recomputed-hash-mismatch";
    case ChainVerification::Reason::kPrevHashLinkageBroken:
      return "prev-hash-linkage-broken";
  }
  return "unknown";
}

ChainVerification verify_full_chain(const AuditLog& log) {
  const auto& records = log.records();
  for (std::size_t k = 0; k < records.size(); ++k) {
    const std::string& expected_prev = k == 0 ? kGenesisHash : records[k - 1].hash;
    if (records[k].prev_hash != expected_prev) {
      return ChainVerification::failure(
          k, ChainVerification::Reason::kPrevHashLinkageBroken);
    }
    std::string recomputed;
    try {
      recomputed = chain_hash(records[k].prev_hash, records[k].spec);
    } catch (const InvalidArgument&) {
      // A spec that no longer canonicalises cannot match its stored hash.
    }
    if (recomputed != records[k].hash) {
      return ChainVerification::failure(
          k, ChainVerification::Reason::kRecomputedHashMismatch);
    }
  }
  return ChainVerification::success();
}

// ---------------------------------------------------------------------------

std::string to_string(ChainScenario kind) {
  switch (kind) {
    case ChainScenario::kHonest: return "honest";
    case ChainScenario::kTamper: return "tamper";
    case ChainScenario::kInject: return "inject";
    case ChainScenario::kSkip: return "skip";
  }
  return "unknown";
}

ChainScenario chain_scenario_from_string(const std::string& name) {
  if (name == "honest") return ChainScenario::kHonest;
  if (name == "tamper") return ChainScenario::kTamper;
  if (name == "inject") return ChainScenario::kInject;
  if (name == "skip") return ChainScenario::kSkip;
  throw InvalidArgument("unknown chain scenario '" + name + "'");
}

StageList default_chain_stages() {
  return {
      {"circuit_def",
       StageSpec{{"name", "circuit_def"},
                 {"ansatz", "ry"},
                 {"theta", 1.2566370614359172},
                 {"qubits", 1}}},
      {"transpile",
       StageSpec{{"name", "transpile"},
                 {"transpiler_version", "1.2.4"},
                 {"optimization_level", 1},
                 {"basis_gates", Json::array({"rz", "sx", "x", "cz"})}}},
      {"backend_sel",
       StageSpec{{"name", "backend_sel"},
                 {"backend", "heron_r2_sim"},
                 {"qubit_layout", Json::array({0})}}},
      {"calibration",
       StageSpec{{"name", "calibration"},
                 {"snapshot_sha256",
                  "9f2c7a51e0b84d3c6a1f0e2d9b8c7a6f5e4d3c2b1a0f9e8d7c6b5a4f3e2d1c0b"},
                 {"single_qubit_error", 0.0002},
                 {"readout_error", 0.012}}},
      {"execution",
       StageSpec{{"name", "execution"},
                 {"shots", 4096},
                 {"trials", 20},
                 {"observables", Json::array({"X", "Y", "Z"})}}},
      {"meas_output",
       StageSpec{{"name", "meas_output"},
                 {"format", "expectation_values"},
                 {"release", true}}},
  };
}

std::size_t default_attack_site(ChainScenario kind) {
  return kind == ChainScenario::kSkip ? 2 : 3;
}

AuditLog build_scenario(ChainScenario kind, const StageList& base, std::size_t site) {
  if (base.size() < 4) {
    throw InvalidArgument("build_scenario: at least four stages are required");
  }
  if (kind != ChainScenario::kHonest && (site == 0 || site >= base.size())) {
    throw InvalidArgument("build_scenario: attack site must be mid-chain");
  }
  AuditLog log;
  for (const auto& [name, spec] : base) log.append(name, spec);
  auto& records = log.mutable_records();
  switch (kind) {
    case ChainScenario::kHonest:
      break;
    case ChainScenario::kTamper:
      records[site].spec.set("tampered", true);
      break;
    case ChainScenario::kInject: {
      StageSpec fake{{"name", "injected_stage"}, {"backend", "attacker_controlled"}};
      const std::string prev = records[site - 1].hash;
      ChainRecord forged{"injected_stage", fake, prev, chain_hash(prev, fake)};
      records.insert(records.begin() + static_cast<std::ptrdiff_t>(site),
                     std::move(forged));
      break;
    }
    case ChainScenario::kSkip:
      records.erase(records.begin() + static_cast<std::ptrdiff_t>(site));
      break;
  }
  return log;
}

AuditLog build_scenario(ChainScenario kind, const StageList& base) {
  return build_scenario(kind, base, default_attack_site(kind));
}

std::size_t expected_failure_index(ChainScenario kind, std::size_t site) {
  return kind == ChainScenario::kInject ? site + 1 : site;
}

// ---------------------------------------------------------------------------

void export_log(std::ostream& os, const AuditLog& log) {
  for (const ChainRecord& r : log.records()) {
    Json line = {{"name", r.stage_name},
                 {"spec", r.spec.json()},
                 {"prev_hash", r.prev_hash},
                 {"hash", r.hash}};
    os << canonical_json(line) << '\n';
  }
}

LoadedLog import_log(std::istream& is) {
  LoadedLog out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::exception& e) {
      throw InvalidArgument("import_log: line " + std::to_string(lineno) + ": " +
                            e.what());
    }
    if (!j.is_object() || !j.contains("name") || !j.contains("spec") ||
        !j.contains("prev_hash") || !j.contains("hash") || !j["name"].is_string() ||
        !j["prev_hash"].is_string() || !j["hash"].is_string()) {
      throw InvalidArgument("import_log: line " + std::to_string(lineno) +
                            ": missing or mistyped record field");
    }
    out.log.mutable_records().push_back({j["name"].get<std::string>(),
                                         StageSpec(j["spec"]),
                                         j["prev_hash"].get<std::string>(),
                                         j["hash"].get<std::string>()});
  }
  out.verification = verify_full_chain(out.log);
  return out;
}

}  // namespace qcivet
