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

#include <gtest/gtest.h>

#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qcivet/experiments.hpp"

namespace qcivet {
namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& tag) {
  const fs::path p = fs::temp_directory_path() /
                     ("qcivet_exp_" + std::to_string(::getpid()) + "_" + tag);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(Exp1, TableValues) {
  const auto r = run_exp1();
  ASSERT_EQ(r.rows.size(), 3u);
  EXPECT_EQ(r.rows[0].candidate, "B_good");
  EXPECT_LE(r.rows[0].full_dev, 1e-9);
  EXPECT_LE(r.rows[0].z_dev, 1e-9);
  EXPECT_NEAR(r.rows[1].full_dev, 0.395, 2e-3);
  EXPECT_NEAR(r.rows[1].z_dev, 0.395, 2e-3);
  EXPECT_NEAR(r.rows[2].full_dev, 1.401, 2e-3);
  EXPECT_LE(r.rows[2].z_dev, 1e-9);
  EXPECT_EQ(r.cells.size(), 54u);
  // Row maxima agree with the per-cell grid.
  for (const auto& row : r.rows) {
    double full = 0.0, z = 0.0;
    for (const auto& c : r.cells) {
      if (c.candidate != row.candidate) continue;
      full = std::max(full, c.deviation);
      if (c.observable == "Z") z = std::max(z, c.deviation);
    }
    EXPECT_DOUBLE_EQ(full, row.full_dev);
    EXPECT_DOUBLE_EQ(z, row.z_dev);
  }
}

// Oracle: for |psi> = a|00> + b|11>, tracing out the first qubit leaves
// diag(|a|^2, |b|^2) exactly.
TEST(Exp2, PartialTraceOracle) {
  EXPECT_LE(partial_trace_error(1.0, 0.0), 1e-15);
  EXPECT_LE(partial_trace_error(Complex(0.6, 0.0), Complex(0.0, 0.8)), 1e-15);
  const auto r = run_exp2(kDefaultSeed);
  ASSERT_EQ(r.trials.size(), 10u);
  for (const auto& t : r.trials) {
    EXPECT_NEAR(std::norm(t.alpha) + std::norm(t.beta), 1.0, 1e-12);
    EXPECT_LE(t.distance, r.max_distance);
  }
  EXPECT_LE(r.max_distance, 1e-12);
}

TEST(Exp3, CandidateIsFusedRotation) {
  EXPECT_LE(diamond_distance_lower_bound(exp3_candidate(), exp3_reference(), 2000), 1e-9);
}

TEST(Probe, RatioNearOne) {
  const auto p = constant_probe();
  EXPECT_NEAR(p.diamond, 2 * std::sin(0.2), 1e-12);
  EXPECT_NEAR(p.observable, 0.395, 2e-3);
  EXPECT_NEAR(p.ratio, 1.005, 0.02);
}

// Default seed, 4096 shots, 20 trials: the p95 floor at the operating noise
// level sits below a 0.04 tolerance, which sits below full_dev(0.4).
TEST(Window, OperatingPointIsInsideWindow) {
  CommandOptions opt;
  opt.out_dir = scratch("window");
  cmd_window(opt);
  const auto j = Json::parse(slurp(opt.out_dir / "window_report.json"));
  const double lower = j["window"]["lower"].get<double>();
  const double upper = j["window"]["upper"].get<double>();
  EXPECT_LT(lower, 0.04);
  EXPECT_GT(upper, 0.04);
  EXPECT_NEAR(upper, 0.395, 2e-3);
  EXPECT_FALSE(j["window"]["empty"].get<bool>());
  EXPECT_NEAR(j["constant_probe"]["ratio"].get<double>(), 1.005, 0.02);
  fs::remove_all(opt.out_dir);
}

// The 0.04 margin above is specific to the default seed (other seeds put
// the floor between roughly 0.04 and 0.05); a non-empty window is not.
TEST(Window, NonEmptyAcrossSeeds) {
  const auto logic = delta_sweep(kDefaultTheta, {kDefaultDelta});
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const auto noise = run_exp3({kOperatingNoiseP}, {4096, 20, seed});
    const auto w = calibration_window(noise, logic, kOperatingNoiseP, kDefaultDelta);
    EXPECT_FALSE(w.empty()) << "seed " << seed;
    EXPECT_LT(w.lower, 0.06) << "seed " << seed;
  }
}

TEST(Commands, OutputsAndManifest) {
  CommandOptions opt;
  opt.out_dir = scratch("outputs");
  opt.trials = 3;
  opt.shots = 256;
  const auto r1 = cmd_exp1(opt);
  EXPECT_FALSE(r1.violation);
  EXPECT_EQ(r1.manifest.output_paths,
            (std::vector<std::string>{"exp1_table.csv", "exp1_grid.csv", "exp1_manifest.json"}));
  for (const auto& p : r1.manifest.output_paths) EXPECT_TRUE(fs::exists(opt.out_dir / p));
  EXPECT_EQ(slurp(opt.out_dir / "exp1_manifest.json"), r1.manifest.to_json());
  const auto m = Json::parse(r1.manifest.to_json());
  EXPECT_EQ(m["command"], "exp1");
  EXPECT_EQ(m["seed"], kDefaultSeed);
  EXPECT_EQ(slurp(opt.out_dir / "exp1_table.csv").substr(0, 26), "candidate,full_dev,z_dev\nB");

  cmd_exp4(opt);
  const std::string delta = slurp(opt.out_dir / "exp4_delta.csv");
  EXPECT_EQ(std::count(delta.begin(), delta.end(), '\n'), 10);

  EXPECT_EQ(cmd_chain_demo(opt, ChainScenario::kHonest).violation, std::nullopt);
  EXPECT_EQ(cmd_chain_demo(opt, ChainScenario::kSkip).violation, "hash");
  const auto skip = Json::parse(slurp(opt.out_dir / "chain_skip.json"));
  EXPECT_EQ(skip["verification"]["failure_index"], 2);
  fs::remove_all(opt.out_dir);
}

TEST(Commands, DemoAndVerify) {
  CommandOptions opt;
  opt.out_dir = scratch("demo");
  const auto r = cmd_demo(opt, all_domains(), all_scenarios());
  EXPECT_EQ(r.violation, "hash,observable,anchor");
  const std::string matrix = slurp(opt.out_dir / "demo_matrix.csv");
  EXPECT_EQ(std::count(matrix.begin(), matrix.end(), '\n'), 13);

  const auto clean_log = opt.out_dir / "demo_cloud_clean.jsonl";
  const auto clean_anchor = opt.out_dir / "demo_cloud_clean.anchor.tsv";
  CommandOptions vopt;
  vopt.out_dir = opt.out_dir / "verify";
  EXPECT_FALSE(cmd_verify(vopt, clean_log, clean_anchor).violation);
  EXPECT_EQ(cmd_verify(vopt, opt.out_dir / "demo_cloud_tamper.jsonl", std::nullopt).violation,
            "hash");
  // A consistent rewrite only fails against its own anchor.
  EXPECT_FALSE(cmd_verify(vopt, opt.out_dir / "demo_cloud_rewrite.jsonl", std::nullopt)
                   .violation);
  EXPECT_EQ(cmd_verify(vopt, opt.out_dir / "demo_cloud_rewrite.jsonl",
                       opt.out_dir / "demo_cloud_rewrite.anchor.tsv")
                .violation,
            "anchor");
  fs::remove_all(opt.out_dir);
}

TEST(Commands, ReproducibleBytes) {
  CommandOptions a;
  a.trials = 2;
  a.shots = 128;
  CommandOptions b = a;
  a.out_dir = scratch("rep_a");
  b.out_dir = scratch("rep_b");
  for (const auto* opt : {&a, &b}) {
    cmd_exp2(*opt);
    cmd_exp3(*opt);
    cmd_window(*opt);
    cmd_demo(*opt, {Domain::kFraud}, all_scenarios());
  }
  std::size_t compared = 0;
  for (const auto& entry : fs::directory_iterator(a.out_dir)) {
    const std::string name = entry.path().filename().string();
    if (name.ends_with(".tsv")) continue;  // anchor timestamps are wall-clock
    EXPECT_EQ(slurp(entry.path()), slurp(b.out_dir / name)) << name;
    ++compared;
  }
  EXPECT_GE(compared, 10u);
  fs::remove_all(a.out_dir);
  fs::remove_all(b.out_dir);
}

TEST(Commands, BenchShape) {
  CommandOptions opt;
  opt.out_dir = scratch("bench");
  opt.bench_reps = 5;
  cmd_bench(opt);
  const auto j = Json::parse(slurp(opt.out_dir / "bench.json"));
  EXPECT_EQ(j["per_commit"]["samples"], 30);
  fs::remove_all(opt.out_dir);
}

}  // namespace
}  // namespace qcivet
