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

// Six-stage application demonstrators run under four scenarios.
//
//   clean   - no attack
//   tamper  - a committed spec is edited after the run
//   drift   - the quantum stage's measured observable leaves its tolerance
//   rewrite - the whole chain is rebuilt offline with one altered spec
//
// Where an attack is caught is decided by actually running the detectors in
// order (commit-time checks, replay, anchor), never looked up.
//
// Spec field values below are illustrative configuration.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qcivet/engine.hpp"
#include "qcivet/sampling.hpp"

namespace qcivet {

enum class Domain { kVqe, kFraud, kCloud };
enum class Scenario { kClean, kTamper, kDrift, kRewrite };
enum class CaughtBy { kNone, kCommitObservable, kReplayHash, kAnchor };

std::string to_string(Domain d);
std::string to_string(Scenario s);
std::string to_string(CaughtBy c);  // none, commit-observable, replay-hash, anchor
Domain domain_from_string(const std::string& name);      // InvalidArgument if unknown
Scenario scenario_from_string(const std::string& name);  // InvalidArgument if unknown

std::vector<Domain> all_domains();
std::vector<Scenario> all_scenarios();

// Reference values and tolerances of the quantum-stage observables.
inline constexpr double kVqeReferenceEnergy = -1.137270174;  // Ha, H2 / STO-3G
inline constexpr double kVqeTolerance = 0.04;
inline constexpr double kFraudTolerance = 0.05;
inline constexpr double kCloudTolerance = 0.05;
inline constexpr double kHeronGateP = 0.0004;
inline constexpr double kEagleGateP = 0.0008;
inline constexpr std::size_t kTracerGates = 80;
inline constexpr std::size_t kCloudShots = 32768;

struct StageTemplate {
  std::string name;
  StageSpec spec;
};

struct PipelineTemplate {
  Domain domain;
  std::vector<StageTemplate> stages;  // always six
  std::size_t quantum_stage_index;
  std::size_t tamper_stage_index;     // spec edited after commit
  std::size_t rewrite_stage_index;    // spec altered in the offline chain
  /// Applies the domain's tamper / rewrite edit to a copy of the spec.
  std::function<StageSpec(const StageSpec&)> tamper_edit;
  std::function<StageSpec(const StageSpec&)> rewrite_edit;
};

PipelineTemplate pipeline_template(Domain d);

/// The quantum stage's observable checks, from shot sampling. Honest runs
/// land inside the tolerance; drift runs use the perturbed channel.
std::vector<ObservableCheck> quantum_stage_simulation(Domain d, bool drift,
                                                      std::uint64_t seed);

struct ViolationInfo {
  ViolationKind kind;
  std::size_t stage_index;
  std::string message;
};

struct ScenarioOutcome {
  Domain domain;
  Scenario scenario;
  CaughtBy caught_by = CaughtBy::kNone;
  std::optional<ViolationInfo> violation;
  std::size_t committed = 0;  // records committed by the streaming engine
  ChainVerification chain;    // final replay result
  AnchorStatus anchor_status = AnchorStatus::kOk;
  AuditLog log;               // final persisted log (after any attack)
};

/// Runs the six commits through an IntegrityVerifier bound to `anchor`,
/// applies the scenario's attack, and reports which detector fired.
ScenarioOutcome run_demo(Domain d, Scenario s, std::shared_ptr<Anchor> anchor,
                         std::uint64_t seed = kDefaultSeed);

/// {"caught_by", "domain", "scenario", "violation"?} as canonical JSON.
std::string scenario_report_json(const ScenarioOutcome& o);

}  // namespace qcivet
