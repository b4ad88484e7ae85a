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

#include "qcivet/experiments.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "qcivet/anchor.hpp"
#include "qcivet/contracts.hpp"
#include "qcivet/error.hpp"

namespace qcivet {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Experiment drivers

Exp1Result run_exp1(double theta, double delta) {
  const Channel a = Channel::unitary(ry(theta));
  const Channel good = Channel::compose({Channel::unitary(s_dagger()),
                                         Channel::unitary(rx(theta)),
                                         Channel::unitary(s_gate())});
  const Channel bad = Channel::unitary(ry(theta + delta));
  const Channel sneaky = make_sneaky(a, Observable::pauli_z());

  const auto inputs = reference_inputs();
  const auto labels = reference_input_labels();
  const Contract full(ObservableFamily::pauli(), 0.0, inputs);
  const Contract weak(ObservableFamily::weak_z(), 0.0, inputs);

  Exp1Result out;
  const std::vector<std::pair<std::string, const Channel*>> candidates = {
      {"B_good", &good}, {"B_bad", &bad}, {"B_sneaky", &sneaky}};
  for (const auto& [name, b] : candidates) {
    const DeviationReport f = worst_deviation(a, *b, full);
    out.rows.push_back({name, f.worst, worst_deviation(a, *b, weak).worst});
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      for (const Observable& o : full.family.observables()) {
        out.cells.push_back({name, labels[i], o.label(), f.at(i, o.label())});
      }
    }
  }
  return out;
}

double partial_trace_error(Complex alpha, Complex beta) {
  const PureState psi({alpha, 0.0, 0.0, beta});
  const DensityOperator reduced = partial_trace_first(psi);
  const ComplexMatrix expected(2, {std::norm(alpha), 0.0, 0.0, std::norm(beta)});
  return (reduced.matrix() - expected).frobenius_norm();
}

Exp2Result run_exp2(std::uint64_t seed, std::size_t n) {
  Exp2Result out;
  for (std::size_t k = 0; k < n; ++k) {
    RandomStream rng = RandomStream::for_cell(seed, {2, k});
    const ComplexMatrix u = haar_unitary(rng);
    const Complex alpha = u(0, 0);
    const Complex beta = u(1, 0);
    const double d = partial_trace_error(alpha, beta);
    out.trials.push_back({alpha, beta, d});
    out.max_distance = std::max(out.max_distance, d);
  }
  return out;
}

Channel exp3_candidate(double theta) {
  return Channel::unitary(s_gate() * rx(theta) * s_dagger());
}

Channel exp3_reference(double theta) { return Channel::unitary(ry(theta)); }

std::vector<NoiseSweepRow> run_exp3(const std::vector<double>& p_values,
                                    const ShotConfig& cfg, double theta) {
  return noise_sweep(exp3_candidate(theta), exp3_reference(theta), p_values, cfg);
}

ConstantProbe constant_probe(double theta, double delta) {
  ConstantProbe p;
  p.delta = delta;
  p.diamond = diamond_distance_unitary(ry(theta), ry(theta + delta));
  p.observable = max_deviation(Channel::unitary(ry(theta)),
                               Channel::unitary(ry(theta + delta)),
                               ObservableFamily::pauli(), reference_inputs());
  p.ratio = p.observable > 0.0 ? p.diamond / p.observable : 0.0;
  return p;
}

// ---------------------------------------------------------------------------
// Commands

std::string RunManifest::to_json() const {
  Json j = {{"command", command},
            {"seed", seed},
            {"parameters", parameters.json()},
            {"output_paths", output_paths}};
  return canonical_json(j) + "\n";
}

namespace {

class Emitter {
 public:
  Emitter(const CommandOptions& opt, std::string command) : opt_(opt) {
    std::error_code ec;
    fs::create_directories(opt.out_dir, ec);
    if (ec) {
      throw std::runtime_error("cannot create output directory '" +
                               opt.out_dir.string() + "': " + ec.message());
    }
    result_.manifest.command = std::move(command);
    result_.manifest.seed = opt.seed;
  }

  void write(const std::string& name, const std::string& content) {
    const fs::path path = opt_.out_dir / name;
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << content;
    f.close();
    if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
    list(name);
  }

  void list(const std::string& name) { result_.manifest.output_paths.push_back(name); }

  StageSpec& parameters() { return result_.manifest.parameters; }
  void flag(std::string kind) {
    if (!result_.violation) {
      result_.violation = std::move(kind);
    } else if (result_.violation->find(kind) == std::string::npos) {
      *result_.violation += "," + kind;
    }
  }

  CommandResult finish() {
    const std::string name = result_.manifest.command + "_manifest.json";
    result_.manifest.output_paths.push_back(name);
    const fs::path path = opt_.out_dir / name;
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << result_.manifest.to_json();
    f.close();
    if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
    return result_;
  }

 private:
  const CommandOptions& opt_;
  CommandResult result_;
};

std::string json_doc(const Json& j) { return canonical_json(j) + "\n"; }

Json stats_json(const LatencyStats& s) {
  return {{"samples", s.samples},
          {"median_us", s.median_us},
          {"p99_us", s.p99_us},
          {"mean_us", s.mean_us},
          {"max_us", s.max_us}};
}

Json chain_json(const ChainVerification& v) {
  Json j = {{"ok", v.ok}, {"reason", to_string(v.reason)}};
  if (!v.ok) j["failure_index"] = v.index;
  return j;
}

}  // namespace

CommandResult cmd_exp1(const CommandOptions& opt) {
  Emitter e(opt, "exp1");
  e.parameters().set("theta", opt.theta).set("delta", opt.delta);
  const Exp1Result r = run_exp1(opt.theta, opt.delta);

  std::ostringstream table;
  table << "candidate,full_dev,z_dev\n";
  for (const auto& row : r.rows) {
    table << row.candidate << ',' << format_sig9(row.full_dev) << ','
          << format_sig9(row.z_dev) << '\n';
  }
  e.write("exp1_table.csv", table.str());

  std::ostringstream grid;
  grid << "candidate,input,observable,deviation\n";
  for (const auto& c : r.cells) {
    grid << c.candidate << ',' << c.input << ',' << c.observable << ','
         << format_sig9(c.deviation) << '\n';
  }
  e.write("exp1_grid.csv", grid.str());
  return e.finish();
}

CommandResult cmd_exp2(const CommandOptions& opt) {
  Emitter e(opt, "exp2");
  e.parameters().set("pairs", 10);
  const Exp2Result r = run_exp2(opt.seed);

  std::ostringstream csv;
  csv << "alpha_re,alpha_im,beta_re,beta_im,frobenius_distance\n";
  for (const auto& t : r.trials) {
    csv << format_sig9(t.alpha.real()) << ',' << format_sig9(t.alpha.imag()) << ','
        << format_sig9(t.beta.real()) << ',' << format_sig9(t.beta.imag()) << ','
        << format_sig9(t.distance) << '\n';
  }
  e.write("exp2_trials.csv", csv.str());

  const double h = 1.0 / std::sqrt(2.0);
  e.write("exp2_report.json",
          json_doc({{"pairs", r.trials.size()},
                    {"max_frobenius_distance", r.max_distance},
                    {"basis_state_distance", partial_trace_error(1.0, 0.0)},
                    {"equal_superposition_distance", partial_trace_error(h, h)}}));
  return e.finish();
}

CommandResult cmd_exp3(const CommandOptions& opt) {
  Emitter e(opt, "exp3");
  e.parameters()
      .set("theta", opt.theta)
      .set("shots", opt.shots)
      .set("trials", opt.trials)
      .set("p_values", opt.p_values);
  const auto rows = run_exp3(opt.p_values, opt.shot_config(), opt.theta);

  std::ostringstream csv;
  write_noise_csv(csv, rows);
  e.write("exp3_noise.csv", csv.str());

  Json fit = {{"p_min", 0.001}, {"p_max", 0.05}};
  try {
    fit["slope"] = fit_noise_slope(rows, 0.001, 0.05);
  } catch (const InvalidArgument&) {
    fit["slope"] = nullptr;  // fewer than two p values in range
  }
  e.write("exp3_fit.json", json_doc(fit));
  return e.finish();
}

CommandResult cmd_exp4(const CommandOptions& opt) {
  Emitter e(opt, "exp4");
  e.parameters().set("theta", opt.theta).set("delta_values", opt.delta_values);
  std::ostringstream csv;
  write_delta_csv(csv, delta_sweep(opt.theta, opt.delta_values));
  e.write("exp4_delta.csv", csv.str());
  return e.finish();
}

CommandResult cmd_window(const CommandOptions& opt) {
  Emitter e(opt, "window");
  e.parameters()
      .set("theta", opt.theta)
      .set("delta", opt.delta)
      .set("shots", opt.shots)
      .set("trials", opt.trials)
      .set("p_values", opt.p_values)
      .set("delta_values", opt.delta_values)
      .set("p_operating", kOperatingNoiseP);
  const auto noise = run_exp3(opt.p_values, opt.shot_config(), opt.theta);
  const auto logic = delta_sweep(opt.theta, opt.delta_values);

  std::ostringstream csv;
  write_calibration_csv(csv, calibration_dataset(noise, logic));
  e.write("window_overlay.csv", csv.str());

  const ConstantProbe probe = constant_probe(opt.theta, opt.delta);
  Json report = {{"constant_probe",
                  {{"delta", probe.delta},
                   {"diamond", probe.diamond},
                   {"observable", probe.observable},
                   {"ratio", probe.ratio}}}};
  try {
    const CalibrationWindow w = calibration_window(noise, logic, kOperatingNoiseP, opt.delta);
    report["window"] = {{"p_operating", kOperatingNoiseP},
                        {"delta_target", opt.delta},
                        {"lower", w.lower},
                        {"upper", w.upper},
                        {"empty", w.empty()}};
  } catch (const InvalidArgument&) {
    report["window"] = nullptr;  // operating point not on the grids
  }
  e.write("window_report.json", json_doc(report));
  return e.finish();
}

CommandResult cmd_chain_demo(const CommandOptions& opt, ChainScenario kind) {
  const std::string name = to_string(kind);
  Emitter e(opt, "chain-demo-" + name);
  const std::size_t site = default_attack_site(kind);
  e.parameters().set("scenario", name).set("site", site);

  const AuditLog log = build_scenario(kind, default_chain_stages());
  const ChainVerification v = verify_full_chain(log);

  Json report = {{"scenario", name}, {"records", log.size()}, {"verification", chain_json(v)}};
  if (kind != ChainScenario::kHonest) {
    report["attack_site"] = site;
    report["expected_failure_index"] = expected_failure_index(kind, site);
  }
  Json heads = Json::array();
  for (const auto& r : log.records()) heads.push_back({{"name", r.stage_name}, {"hash", r.hash}});
  report["chain"] = heads;
  e.write("chain_" + name + ".json", json_doc(report));

  std::ostringstream jsonl;
  export_log(jsonl, log);
  e.write("chain_" + name + ".jsonl", jsonl.str());
  if (!v.ok) e.flag("hash");
  return e.finish();
}

CommandResult cmd_demo(const CommandOptions& opt, const std::vector<Domain>& domains,
                       const std::vector<Scenario>& scenarios) {
  Emitter e(opt, "demo");
  Json dnames = Json::array();
  Json snames = Json::array();
  for (Domain d : domains) dnames.push_back(to_string(d));
  for (Scenario s : scenarios) snames.push_back(to_string(s));
  e.parameters().set("domains", dnames).set("scenarios", snames);

  std::ostringstream matrix;
  matrix << "domain,scenario,caught_by,committed,chain_ok,anchor_status\n";
  for (Domain d : domains) {
    for (Scenario s : scenarios) {
      const std::string stem = "demo_" + to_string(d) + "_" + to_string(s);
      const std::string anchor_name = stem + ".anchor.tsv";
      // Each demo run owns a fresh anchor so reruns do not accumulate heads.
      fs::remove(opt.out_dir / anchor_name);
      auto anchor = std::make_shared<FileAnchor>((opt.out_dir / anchor_name).string());
      const ScenarioOutcome o = run_demo(d, s, anchor, opt.seed);

      e.write(stem + ".json", scenario_report_json(o) + "\n");
      std::ostringstream jsonl;
      export_log(jsonl, o.log);
      e.write(stem + ".jsonl", jsonl.str());
      e.list(anchor_name);

      matrix << to_string(d) << ',' << to_string(s) << ',' << to_string(o.caught_by) << ','
             << o.committed << ',' << (o.chain.ok ? "true" : "false") << ','
             << to_string(o.anchor_status) << '\n';
      if (o.violation) e.flag(to_string(o.violation->kind));
    }
  }
  e.write("demo_matrix.csv", matrix.str());
  return e.finish();
}

CommandResult cmd_bench(const CommandOptions& opt) {
  Emitter e(opt, "bench");
  e.parameters().set("n_stages", opt.bench_stages).set("reps", opt.bench_reps);
  const BenchResult b = bench_commit(opt.bench_stages, opt.bench_reps);
  e.write("bench.json", json_doc({{"n_stages", b.n_stages},
                                  {"reps", b.reps},
                                  {"per_commit", stats_json(b.per_commit)},
                                  {"pipeline", stats_json(b.pipeline)}}));
  return e.finish();
}

CommandResult cmd_verify(const CommandOptions& opt, const fs::path& log,
                         const std::optional<fs::path>& anchor) {
  Emitter e(opt, "verify");
  e.parameters().set("log", log.string());
  if (anchor) e.parameters().set("anchor", anchor->string());

  std::ifstream in(log, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + log.string() + "'");
  const LoadedLog loaded = import_log(in);

  Json report = {{"records", loaded.log.size()},
                 {"verification", chain_json(loaded.verification)}};
  if (!loaded.verification.ok) e.flag("hash");
  if (anchor) {
    const AnchorStatus st = verify_against_anchor(FileAnchor(anchor->string()), loaded.log);
    report["anchor_status"] = to_string(st);
    if (st != AnchorStatus::kOk) e.flag("anchor");
  }
  e.write("verify_report.json", json_doc(report));
  return e.finish();
}

}  // namespace qcivet
