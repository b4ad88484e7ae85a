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

// qcivet: reproduce the separation experiments, calibration sweeps, hash
// chain scenarios and application demos from the command line.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qcivet/error.hpp"
#include "qcivet/experiments.hpp"

namespace {

constexpr int kExitIntegrity = 3;

std::vector<double> parse_list(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) {
      throw qcivet::InvalidArgument(flag + ": not a number: '" + item + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw qcivet::InvalidArgument(flag + ": empty list");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qcivet: contract-based integrity verification for hybrid pipelines"};
  app.require_subcommand(1);

  qcivet::CommandOptions opt;
  std::string out_dir = opt.out_dir.string();
  std::string p_list;
  std::string delta_list;

  app.add_option("--seed", opt.seed, "RNG seed for every sampled quantity")
      ->capture_default_str();
  app.add_option("--out", out_dir, "Output directory (env QCIVET_OUT overrides)")
      ->capture_default_str();
  app.add_option("--shots", opt.shots, "Shots per measurement")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--trials", opt.trials, "Independent trials per noise level")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--p-list", p_list, "Comma-separated depolarizing probabilities");
  app.add_option("--delta-list", delta_list, "Comma-separated over-rotation angles");
  app.add_option("--theta", opt.theta, "Reference rotation angle in radians")
      ->capture_default_str();

  auto* exp1 = app.add_subcommand("exp1", "Ideal subtype separation table and grid");
  auto* exp2 = app.add_subcommand("exp2", "Partial-trace check on random Bell-type states");
  auto* exp3 = app.add_subcommand("exp3", "Depolarizing-noise sweep");
  auto* exp4 = app.add_subcommand("exp4", "Over-rotation sweep");
  auto* window = app.add_subcommand("window", "Calibration window overlay and constant probe");

  auto* chain = app.add_subcommand("chain-demo", "Hash-chain attack scenario");
  std::string chain_kind = "honest";
  chain->add_option("kind", chain_kind, "honest | tamper | inject | skip")
      ->check(CLI::IsMember({"honest", "tamper", "inject", "skip"}))
      ->capture_default_str();

  auto* demo = app.add_subcommand("demo", "Application demonstrator scenarios");
  std::string domain = "all";
  std::string scenario = "all";
  demo->add_option("--domain", domain, "vqe | fraud | cloud | all")
      ->check(CLI::IsMember({"vqe", "fraud", "cloud", "all"}))
      ->capture_default_str();
  demo->add_option("--scenario", scenario, "clean | tamper | drift | rewrite | all")
      ->check(CLI::IsMember({"clean", "tamper", "drift", "rewrite", "all"}))
      ->capture_default_str();

  auto* bench = app.add_subcommand("bench", "Commit latency benchmark");
  bench->add_option("--reps", opt.bench_reps, "Synthetic pipeline runs")->capture_default_str();
  bench->add_option("--stages", opt.bench_stages, "Stages per pipeline")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Re-verify an exported audit log");
  std::string log_path;
  std::string anchor_path;
  verify->add_option("--log", log_path, "Exported JSONL audit log")->required();
  verify->add_option("--anchor", anchor_path, "Anchor file to check contiguity against");

  CLI11_PARSE(app, argc, argv);

  try {
    if (const char* env = std::getenv("QCIVET_OUT"); env && *env) out_dir = env;
    opt.out_dir = out_dir;
    if (!p_list.empty()) opt.p_values = parse_list(p_list, "--p-list");
    if (!delta_list.empty()) opt.delta_values = parse_list(delta_list, "--delta-list");

    qcivet::CommandResult result;
    if (exp1->parsed()) {
      result = qcivet::cmd_exp1(opt);
    } else if (exp2->parsed()) {
      result = qcivet::cmd_exp2(opt);
    } else if (exp3->parsed()) {
      result = qcivet::cmd_exp3(opt);
    } else if (exp4->parsed()) {
      result = qcivet::cmd_exp4(opt);
    } else if (window->parsed()) {
      result = qcivet::cmd_window(opt);
    } else if (chain->parsed()) {
      result = qcivet::cmd_chain_demo(opt, qcivet::chain_scenario_from_string(chain_kind));
    } else if (demo->parsed()) {
      const auto domains = domain == "all"
                               ? qcivet::all_domains()
                               : std::vector{qcivet::domain_from_string(domain)};
      const auto scenarios = scenario == "all"
                                 ? qcivet::all_scenarios()
                                 : std::vector{qcivet::scenario_from_string(scenario)};
      result = qcivet::cmd_demo(opt, domains, scenarios);
    } else if (bench->parsed()) {
      result = qcivet::cmd_bench(opt);
    } else if (verify->parsed()) {
      std::optional<std::filesystem::path> anchor;
      if (!anchor_path.empty()) anchor = anchor_path;
      result = qcivet::cmd_verify(opt, log_path, anchor);
    }

    for (const auto& p : result.manifest.output_paths) {
      std::cout << (opt.out_dir / p).string() << '\n';
    }
    if (result.violation) {
      std::cerr << "integrity violation detected (kind=" << *result.violation << ")\n";
      return kExitIntegrity;
    }
    return 0;
  } catch (const qcivet::InvalidArgument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
