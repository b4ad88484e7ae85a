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

// Experiment drivers and the file-emitting commands behind the CLI.
//
// Every command writes its artifacts into CommandOptions::out_dir plus a
// canonical-JSON RunManifest named <command>_manifest.json listing them.
// Sweep data is CSV, reports are canonical JSON. Identical options give
// byte-identical files, except bench.json (wall-clock timings) and anchor
// files (timestamps).

#pragma once

#include <cstdint>
#include <filesystem>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "qcivet/auditchain.hpp"
#include "qcivet/pipelines.hpp"
#include "qcivet/sampling.hpp"

namespace qcivet {

inline constexpr double kDefaultTheta = 2.0 * std::numbers::pi / 5.0;
inline constexpr double kDefaultDelta = 0.4;
/// Noise level standing in for a Heron-class device in the window command.
inline constexpr double kOperatingNoiseP = 0.001;

// ---------------------------------------------------------------------------
// exp1: ideal subtype separation.

struct Exp1Row {
  std::string candidate;  // B_good, B_bad, B_sneaky
  double full_dev = 0.0;  // worst over {X, Y, Z}
  double z_dev = 0.0;     // worst over {Z}
};

struct Exp1Cell {
  std::string candidate;
  std::string input;
  std::string observable;
  double deviation = 0.0;
};

struct Exp1Result {
  std::vector<Exp1Row> rows;
  std::vector<Exp1Cell> cells;  // 3 candidates x 6 inputs x 3 Paulis
};

/// A = Ry(theta); B_good = S Rx(theta) S† as a three-gate composition;
/// B_bad = Ry(theta + delta); B_sneaky = make_sneaky(A, Z).
Exp1Result run_exp1(double theta = kDefaultTheta, double delta = kDefaultDelta);

// ---------------------------------------------------------------------------
// exp2: partial trace of alpha|00> + beta|11>.

struct Exp2Trial {
  Complex alpha;
  Complex beta;
  double distance = 0.0;  // Frobenius distance to diag(|alpha|^2, |beta|^2)
};

struct Exp2Result {
  std::vector<Exp2Trial> trials;
  double max_distance = 0.0;
};

/// Reduced state of the second qubit against the analytic diagonal.
double partial_trace_error(Complex alpha, Complex beta);
/// `n` Haar-random (alpha, beta) pairs drawn from `seed`.
Exp2Result run_exp2(std::uint64_t seed, std::size_t n = 10);

// ---------------------------------------------------------------------------
// Experiments 3 and 4, calibration window and constant probe.

/// Fused B_good gate S Rx(theta) S† (one physical gate) and A = Ry(theta).
Channel exp3_candidate(double theta = kDefaultTheta);
Channel exp3_reference(double theta = kDefaultTheta);

std::vector<NoiseSweepRow> run_exp3(const std::vector<double>& p_values,
                                    const ShotConfig& cfg,
                                    double theta = kDefaultTheta);

struct ConstantProbe {
  double delta = 0.0;
  double diamond = 0.0;      // exact diamond distance Ry(theta) vs Ry(theta + delta)
  double observable = 0.0;   // full-XYZ worst deviation on the reference inputs
  double ratio = 0.0;        // diamond / observable
};

ConstantProbe constant_probe(double theta = kDefaultTheta, double delta = kDefaultDelta);

// ---------------------------------------------------------------------------
// Commands

struct CommandOptions {
  std::filesystem::path out_dir = "qcivet_out";
  std::uint64_t seed = kDefaultSeed;
  std::size_t shots = 4096;
  std::size_t trials = 20;
  std::vector<double> p_values = default_p_values();
  std::vector<double> delta_values = default_delta_values();
  double theta = kDefaultTheta;
  double delta = kDefaultDelta;
  std::size_t bench_reps = 10000;
  std::size_t bench_stages = 6;

  ShotConfig shot_config() const { return {shots, trials, seed}; }
};

struct RunManifest {
  std::string command;
  std::uint64_t seed = 0;
  StageSpec parameters;
  std::vector<std::string> output_paths;  // relative to out_dir

  std::string to_json() const;  // canonical
};

/// What a command produced. `violation` carries the kind of any integrity
/// failure it detected; the CLI turns that into a nonzero exit.
struct CommandResult {
  RunManifest manifest;
  std::optional<std::string> violation;
};

CommandResult cmd_exp1(const CommandOptions& opt);
CommandResult cmd_exp2(const CommandOptions& opt);
CommandResult cmd_exp3(const CommandOptions& opt);
CommandResult cmd_exp4(const CommandOptions& opt);
CommandResult cmd_window(const CommandOptions& opt);
CommandResult cmd_chain_demo(const CommandOptions& opt, ChainScenario kind);
/// Runs every (domain, scenario) pair given; one report + log per pair and a
/// demo_matrix.csv summary.
CommandResult cmd_demo(const CommandOptions& opt, const std::vector<Domain>& domains,
                       const std::vector<Scenario>& scenarios);
CommandResult cmd_bench(const CommandOptions& opt);
/// Re-verifies an exported log, optionally against an anchor file.
CommandResult cmd_verify(const CommandOptions& opt, const std::filesystem::path& log,
                         const std::optional<std::filesystem::path>& anchor);

}  // namespace qcivet
