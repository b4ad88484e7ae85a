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

#include "qcivet/pipelines.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_set>

#include "qcivet/error.hpp"

namespace qcivet {

std::string to_string(Domain d) {
  switch (d) {
    case Domain::kVqe: return "vqe";
    case Domain::kFraud: return "fraud";
    case Domain::kCloud: return "cloud";
  }
  return "unknown";
}

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::kClean: return "clean";
    case Scenario::kTamper: return "tamper";
    case Scenario::kDrift: return "drift";
    case Scenario::kRewrite: return "rewrite";
  }
  return "unknown";
}

std::string to_string(CaughtBy c) {
  switch (c) {
    case CaughtBy::kNone: return "none";
    case CaughtBy::kCommitObservable: return "commit-observable";
    case CaughtBy::kReplayHash: return "replay-hash";
    case CaughtBy::kAnchor: return "anchor";
  }
  return "unknown";
}

Domain domain_from_string(const std::string& name) {
  for (Domain d : all_domains()) {
    if (to_string(d) == name) return d;
  }
  throw InvalidArgument("unknown domain '" + name + "' (expected vqe, fraud or cloud)");
}

Scenario scenario_from_string(const std::string& name) {
  for (Scenario s : all_scenarios()) {
    if (to_string(s) == name) return s;
  }
  throw InvalidArgument("unknown scenario '" + name +
                        "' (expected clean, tamper, drift or rewrite)");
}

std::vector<Domain> all_domains() { return {Domain::kVqe, Domain::kFraud, Domain::kCloud}; }

std::vector<Scenario> all_scenarios() {
  return {Scenario::kClean, Scenario::kTamper, Scenario::kDrift, Scenario::kRewrite};
}

// ---------------------------------------------------------------------------
// Templates

namespace {

constexpr double kVqeTheta = 2.0 * std::numbers::pi / 5.0;
constexpr double kVqeDriftRotation = 0.4;
constexpr std::size_t kVqeShots = 4096;
constexpr std::size_t kFraudShots = 8192;
constexpr double kFraudPoison = 0.1;
const std::vector<double> kFraudFeatures = {0.3, 0.9, 1.7, 2.4};

StageSpec edited(StageSpec spec, const std::string& key, Json value) {
  spec.set(key, std::move(value));
  return spec;
}

PipelineTemplate vqe_template() {
  PipelineTemplate t;
  t.domain = Domain::kVqe;
  t.stages = {
      {"molecular_geometry",
       {{"name", "molecular_geometry"},
        {"molecule", "H2"},
        {"coordinates_angstrom", Json::array({Json::array({0.0, 0.0, 0.0}),
                                              Json::array({0.0, 0.0, 0.735})})},
        {"basis_set", "sto-3g"},
        {"charge", 0},
        {"multiplicity", 1}}},
      {"active_space_selection",
       {{"name", "active_space_selection"}, {"active_orbitals", 2}, {"frozen_core", false}}},
      {"hamiltonian_construction",
       {{"name", "hamiltonian_construction"}, {"encoding", "parity"}, {"pauli_terms", 5}}},
      {"ansatz_synthesis",
       {{"name", "ansatz_synthesis"},
        {"ansatz", "ry"},
        {"parameters", 1},
        {"circuit_depth", 1}}},
      {"vqe_optimisation",
       {{"name", "vqe_optimisation"},
        {"backend", "heron_r2_sim"},
        {"shots_per_iteration", kVqeShots},
        {"optimiser", "cobyla"},
        {"theta", kVqeTheta}}},
      {"result_interpretation",
       {{"name", "result_interpretation"},
        {"binding_energy_unit", "Ha"},
        {"fda_compliance", true}}},
  };
  t.quantum_stage_index = 4;
  t.tamper_stage_index = 1;
  t.rewrite_stage_index = 1;
  t.tamper_edit = [](const StageSpec& s) { return edited(s, "active_orbitals", 6); };
  t.rewrite_edit = [](const StageSpec& s) { return edited(s, "active_orbitals", 4); };
  return t;
}

PipelineTemplate fraud_template() {
  PipelineTemplate t;
  t.domain = Domain::kFraud;
  t.stages = {
      {"transaction_ingestion",
       {{"name", "transaction_ingestion"}, {"source", "card_stream"}, {"batch_size", 512}}},
      {"feature_engineering",
       {{"name", "feature_engineering"},
        {"features", Json::array({"amount", "merchant_risk", "velocity", "geo_distance"})},
        {"normalisation", "minmax"}}},
      {"quantum_kernel_preparation",
       {{"name", "quantum_kernel_preparation"},
        {"feature_map", "ry_angle"},
        {"kernel", "fidelity"},
        {"support_points", static_cast<int>(kFraudFeatures.size())}}},
      {"qpu_kernel_evaluation",
       {{"name", "qpu_kernel_evaluation"},
        {"backend", "heron_r2_sim"},
        {"shots", kFraudShots}}},
      {"classification",
       {{"name", "classification"}, {"classifier", "svm"}, {"regularisation", 1.0}}},
      {"alert_decision",
       {{"name", "alert_decision"},
        {"threshold", 0.65},
        {"block_action", "hold_and_review"},
        {"regulator", "SOX"},
        {"audit_retention_days", 2555}}},
  };
  t.quantum_stage_index = 3;
  t.tamper_stage_index = 5;
  t.rewrite_stage_index = 1;
  t.tamper_edit = [](const StageSpec& s) { return edited(s, "threshold", 0.95); };
  t.rewrite_edit = [](const StageSpec& s) {
    return edited(s, "features", Json::array({"amount", "merchant_risk"}));
  };
  return t;
}

PipelineTemplate cloud_template() {
  PipelineTemplate t;
  t.domain = Domain::kCloud;
  t.stages = {
      {"customer_submission",
       {{"name", "customer_submission"},
        {"workload", "hybrid_vqe"},
        {"claimed_backend_class", "heron_r2"}}},
      {"cloud_transpilation",
       {{"name", "cloud_transpilation"}, {"optimization_level", 1}, {"tracer_gates", kTracerGates}}},
      {"backend_assignment",
       {{"name", "backend_assignment"}, {"backend", "heron_r2_sim"}, {"qubit", 0}}},
      {"calibration_verification",
       {{"name", "calibration_verification"},
        {"snapshot_id", "cal-2026-04-15T06:00Z"},
        {"single_qubit_error", kHeronGateP}}},
      {"job_execution",
       {{"name", "job_execution"},
        {"shots", kCloudShots},
        {"tracer", "x_pairs"},
        {"observable", "Z"}}},
      {"result_delivery",
       {{"name", "result_delivery"}, {"format", "counts"}, {"signed", true}}},
  };
  t.quantum_stage_index = 4;
  t.tamper_stage_index = 3;
  t.rewrite_stage_index = 2;
  t.tamper_edit = [](const StageSpec& s) {
    return edited(s, "snapshot_id", "cal-2026-01-02T06:00Z");
  };
  t.rewrite_edit = [](const StageSpec& s) { return edited(s, "backend", "eagle_r3_sim"); };
  return t;
}

}  // namespace

PipelineTemplate pipeline_template(Domain d) {
  switch (d) {
    case Domain::kVqe: return vqe_template();
    case Domain::kFraud: return fraud_template();
    case Domain::kCloud: return cloud_template();
  }
  throw InvalidArgument("pipeline_template: unknown domain");
}

// ---------------------------------------------------------------------------
// Quantum stages

std::vector<ObservableCheck> quantum_stage_simulation(Domain d, bool drift,
                                                      std::uint64_t seed) {
  const DensityOperator zero = PureState::zero();
  const Observable z = Observable::pauli_z();
  const std::uint64_t base = static_cast<std::uint64_t>(d);

  switch (d) {
    case Domain::kVqe: {
      // <H> = a + 0.5 <Z>, offset so the ideal ansatz hits E0 exactly. A
      // biased optimiser lands at theta + 0.4.
      const double offset = kVqeReferenceEnergy - 0.5 * std::cos(kVqeTheta);
      const double theta = drift ? kVqeTheta + kVqeDriftRotation : kVqeTheta;
      RandomStream rng = RandomStream::for_cell(seed, {base, 0});
      const double zest = estimate_pauli(Channel::unitary(ry(theta)), zero, z,
                                         {kHeronGateP, 0.0}, kVqeShots, rng);
      return {{"energy_Ha", offset + 0.5 * zest, kVqeReferenceEnergy, kVqeTolerance}};
    }
    case Domain::kFraud: {
      // Fidelity kernel K_ij = |<0|Ry(-x_j) Ry(x_i)|0>|^2 = cos^2((x_i - x_j)/2),
      // estimated from P(0) per pair. A poisoned QPU shifts one entry.
      double worst = 0.0;
      std::uint64_t cell = 0;
      for (std::size_t i = 0; i < kFraudFeatures.size(); ++i) {
        for (std::size_t j = i + 1; j < kFraudFeatures.size(); ++j, ++cell) {
          const double xi = kFraudFeatures[i];
          const double xj = kFraudFeatures[j];
          const Channel circuit = Channel::compose(
              {Channel::unitary(ry(xi)), Channel::unitary(ry(-xj))});
          RandomStream rng = RandomStream::for_cell(seed, {base, cell});
          const double zest =
              estimate_pauli(circuit, zero, z, {kHeronGateP, 0.0}, kFraudShots, rng);
          double k_est = 0.5 * (1.0 + zest);
          if (drift && cell == 0) k_est += kFraudPoison;
          const double c = std::cos(0.5 * (xi - xj));
          worst = std::max(worst, std::abs(k_est - c * c));
        }
      }
      return {{"kernel_max_abs_deviation", worst, 0.0, kFraudTolerance}};
    }
    case Domain::kCloud: {
      // Tracer: 80 X gates (identity overall) on |0>, read out in Z. Each
      // depolarizing layer shrinks <Z> by (1 - p), so the ideal deviation is
      // 1 - (1 - p)^80: about 0.031 at Heron-class and 0.062 at Eagle-class.
      std::vector<Channel> gates(kTracerGates, Channel::unitary(x_gate()));
      const Channel tracer = Channel::compose(std::move(gates));
      const double p = drift ? kEagleGateP : kHeronGateP;
      RandomStream rng = RandomStream::for_cell(seed, {base, 0});
      const double zest = estimate_pauli(tracer, zero, z, {p, 0.0}, kCloudShots, rng);
      return {{"tracer_deviation", 1.0 - zest, 0.0, kCloudTolerance}};
    }
  }
  throw InvalidArgument("quantum_stage_simulation: unknown domain");
}

// ---------------------------------------------------------------------------
// Scenarios

ScenarioOutcome run_demo(Domain d, Scenario s, std::shared_ptr<Anchor> anchor,
                         std::uint64_t seed) {
  const PipelineTemplate tpl = pipeline_template(d);
  IntegrityVerifier verifier(std::move(anchor));
  ScenarioOutcome out;
  out.domain = d;
  out.scenario = s;

  // Streaming commits. The host aborts the pipeline on the first violation.
  try {
    for (std::size_t k = 0; k < tpl.stages.size(); ++k) {
      StageResult r{tpl.stages[k].name, tpl.stages[k].spec, {}};
      if (k == tpl.quantum_stage_index) {
        r.observables = quantum_stage_simulation(d, s == Scenario::kDrift, seed);
      }
      verifier.commit_stage(r);
    }
  } catch (const IntegrityViolation& e) {
    out.violation = ViolationInfo{e.kind(), e.stage_index(), e.message()};
    switch (e.kind()) {
      case ViolationKind::kObservable: out.caught_by = CaughtBy::kCommitObservable; break;
      case ViolationKind::kHash: out.caught_by = CaughtBy::kReplayHash; break;
      case ViolationKind::kAnchor: out.caught_by = CaughtBy::kAnchor; break;
    }
  }
  out.committed = verifier.log().size();

  // Post-run attacks on the persisted log.
  if (!out.violation) {
    auto& records = verifier.mutable_log().mutable_records();
    if (s == Scenario::kTamper) {
      StageSpec& spec = records.at(tpl.tamper_stage_index).spec;
      spec = tpl.tamper_edit(spec);
    } else if (s == Scenario::kRewrite) {
      // Globally consistent: every hash is recomputed, nothing is anchored.
      AuditLog offline;
      for (std::size_t k = 0; k < records.size(); ++k) {
        offline.append(records[k].stage_name, k == tpl.rewrite_stage_index
                                                  ? tpl.rewrite_edit(records[k].spec)
                                                  : records[k].spec);
      }
      verifier.mutable_log() = std::move(offline);
    }
  }

  // Post-pipeline verification: replay first, then the anchor.
  out.chain = verifier.verify_full_chain();
  out.anchor_status = verifier.verify_against_anchor();
  if (!out.violation && !out.chain.ok) {
    out.caught_by = CaughtBy::kReplayHash;
    out.violation = ViolationInfo{ViolationKind::kHash, out.chain.index,
                                  "replay: " + to_string(out.chain.reason)};
  } else if (!out.violation && out.anchor_status != AnchorStatus::kOk) {
    const auto entries = verifier.anchor().entries();
    std::unordered_set<std::string> anchored;
    for (const AnchorEntry& e : entries) anchored.insert(e.head);
    std::size_t first = 0;
    const auto& records = verifier.log().records();
    while (first < records.size() && anchored.count(records[first].hash)) ++first;
    if (first == records.size()) first = 0;
    out.caught_by = CaughtBy::kAnchor;
    out.violation = ViolationInfo{ViolationKind::kAnchor, first,
                                  "anchor: " + to_string(out.anchor_status)};
  }
  out.log = verifier.log();
  return out;
}

std::string scenario_report_json(const ScenarioOutcome& o) {
  Json j = {{"domain", to_string(o.domain)},
            {"scenario", to_string(o.scenario)},
            {"caught_by", to_string(o.caught_by)}};
  if (o.violation) {
    j["violation"] = {{"kind", to_string(o.violation->kind)},
                      {"stage_index", o.violation->stage_index},
                      {"message", o.violation->message}};
  }
  return canonical_json(j);
}

}  // namespace qcivet
