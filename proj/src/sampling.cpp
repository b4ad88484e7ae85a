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

#include "qcivet/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <numeric>
#include <ostream>

#include "qcivet/error.hpp"

namespace qcivet {

namespace {

enum class PauliAxis { kX, kY, kZ };

PauliAxis axis_of(const Observable& obs) {
  if (obs.dim() == 2) {
    if (obs.matrix().approx_equal(x_gate(), 1e-12)) return PauliAxis::kX;
    if (obs.matrix().approx_equal(y_gate(), 1e-12)) return PauliAxis::kY;
    if (obs.matrix().approx_equal(z_gate(), 1e-12)) return PauliAxis::kZ;
  }
  throw InvalidArgument("observable '" + obs.label() +
                        "' is not a single-qubit Pauli X, Y or Z");
}

void require_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidArgument(std::string(what) + " must lie in [0, 1]");
  }
}

DensityOperator apply_noisy_gate(const ComplexMatrix& u, const DensityOperator& rho,
                                 double gate_p) {
  DensityOperator out = Channel::unitary(u).apply(rho);
  if (gate_p > 0.0) out = Channel::depolarizing(gate_p, rho.dim()).apply(out);
  return out;
}

}  // namespace

void ShotConfig::validate() const {
  if (shots < 1) throw InvalidArgument("ShotConfig: shots must be >= 1");
  if (trials < 1) throw InvalidArgument("ShotConfig: trials must be >= 1");
}

void NoiseSpec::validate() const {
  require_probability(gate_p, "NoiseSpec.gate_p");
  require_probability(readout_flip, "NoiseSpec.readout_flip");
}

TrialStats TrialStats::from_samples(std::vector<double> samples) {
  TrialStats st;
  st.samples = std::move(samples);
  const std::size_t n = st.samples.size();
  if (n == 0) return st;
  st.mean = std::accumulate(st.samples.begin(), st.samples.end(), 0.0) /
            static_cast<double>(n);
  if (n > 1) {
    double ss = 0.0;
    for (double x : st.samples) ss += (x - st.mean) * (x - st.mean);
    st.std = std::sqrt(ss / static_cast<double>(n - 1));
  }
  std::vector<double> sorted = st.samples;
  std::sort(sorted.begin(), sorted.end());
  const auto rank =
      static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(n)));
  st.p95 = sorted[std::clamp<std::size_t>(rank, 1, n) - 1];
  return st;
}

std::vector<ComplexMatrix> basis_change_gates(const Observable& pauli) {
  switch (axis_of(pauli)) {
    case PauliAxis::kX:
      return {h_gate()};
    case PauliAxis::kY:
      return {s_dagger(), h_gate()};
    case PauliAxis::kZ:
      return {};
  }
  return {};
}

DensityOperator noisy_measurement_state(const Channel& state_prep,
                                        const DensityOperator& input,
                                        const Observable& pauli,
                                        double gate_p) {
  require_probability(gate_p, "gate_p");
  if (state_prep.dim() != 2 || input.dim() != 2) {
    throw InvalidArgument("noisy_measurement_state: single-qubit input required");
  }
  const std::vector<ComplexMatrix> basis = basis_change_gates(pauli);
  DensityOperator rho = input;
  for (const Channel& part : state_prep.flattened()) {
    if (part.kind() == Channel::Kind::kUnitary) {
      rho = apply_noisy_gate(part.unitary_matrix(), rho, gate_p);
    } else {
      rho = part.apply(rho);
    }
  }
  for (const ComplexMatrix& g : basis) rho = apply_noisy_gate(g, rho, gate_p);
  return rho;
}

double zero_outcome_probability(const Channel& state_prep,
                                const DensityOperator& input,
                                const Observable& pauli, const NoiseSpec& noise) {
  noise.validate();
  const DensityOperator rho =
      noisy_measurement_state(state_prep, input, pauli, noise.gate_p);
  const double p0 = std::clamp(rho.matrix()(0, 0).real(), 0.0, 1.0);
  return (1.0 - noise.readout_flip) * p0 + noise.readout_flip * (1.0 - p0);
}

double estimate_pauli(const Channel& state_prep, const DensityOperator& input,
                      const Observable& pauli, const NoiseSpec& noise,
                      std::size_t shots, RandomStream& rng) {
  noise.validate();
  if (shots < 1) throw InvalidArgument("estimate_pauli: shots must be >= 1");
  const DensityOperator rho =
      noisy_measurement_state(state_prep, input, pauli, noise.gate_p);
  const double p0 = std::clamp(rho.matrix()(0, 0).real(), 0.0, 1.0);
  std::size_t n0 = 0;
  for (std::size_t s = 0; s < shots; ++s) {
    bool zero = rng.uniform() < p0;
    if (noise.readout_flip > 0.0 && rng.uniform() < noise.readout_flip) zero = !zero;
    n0 += zero ? 1 : 0;
  }
  const auto n = static_cast<double>(shots);
  return (2.0 * static_cast<double>(n0) - n) / n;
}

// ---------------------------------------------------------------------------

std::vector<NoiseSweepRow> noise_sweep(const Channel& b, const Channel& a_ref,
                                       const std::vector<double>& p_values,
                                       const ShotConfig& cfg,
                                       const std::vector<DensityOperator>& inputs,
                                       double readout_flip) {
  cfg.validate();
  for (double p : p_values) require_probability(p, "noise_sweep p");
  require_probability(readout_flip, "noise_sweep readout_flip");

  const std::vector<Observable> paulis = ObservableFamily::pauli().observables();
  // Noiseless reference expectations, shared by every cell.
  std::vector<std::vector<double>> reference(inputs.size());
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const DensityOperator out = a_ref.apply(inputs[i]);
    for (const Observable& o : paulis) reference[i].push_back(expectation(o, out));
  }

  auto run_cell = [&](std::size_t pi) {
    const NoiseSpec noise{p_values[pi], readout_flip};
    std::vector<double> worst(cfg.trials, 0.0);
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      for (std::size_t i = 0; i < inputs.size(); ++i) {
        for (std::size_t k = 0; k < paulis.size(); ++k) {
          RandomStream rng = RandomStream::for_cell(cfg.seed, {pi, t, i, k});
          const double est =
              estimate_pauli(b, inputs[i], paulis[k], noise, cfg.shots, rng);
          worst[t] = std::max(worst[t], std::abs(est - reference[i][k]));
        }
      }
    }
    return NoiseSweepRow{p_values[pi], TrialStats::from_samples(std::move(worst))};
  };

  std::vector<std::future<NoiseSweepRow>> pending;
  pending.reserve(p_values.size());
  for (std::size_t pi = 0; pi < p_values.size(); ++pi) {
    pending.push_back(std::async(std::launch::async, run_cell, pi));
  }
  std::vector<NoiseSweepRow> rows;
  rows.reserve(p_values.size());
  for (auto& f : pending) rows.push_back(f.get());
  return rows;
}

std::vector<NoiseSweepRow> noise_sweep(const Channel& b, const Channel& a_ref,
                                       const std::vector<double>& p_values,
                                       const ShotConfig& cfg) {
  return noise_sweep(b, a_ref, p_values, cfg, reference_inputs());
}

std::vector<DeltaSweepRow> delta_sweep(double theta,
                                       const std::vector<double>& delta_values) {
  const Channel a = Channel::unitary(ry(theta));
  const std::vector<DensityOperator> inputs = reference_inputs();
  const ObservableFamily full = ObservableFamily::pauli();
  const ObservableFamily weak = ObservableFamily::weak_z();
  std::vector<DeltaSweepRow> rows;
  rows.reserve(delta_values.size());
  for (double delta : delta_values) {
    const Channel b = Channel::unitary(ry(theta + delta));
    rows.push_back({delta, max_deviation(a, b, full, inputs),
                    max_deviation(a, b, weak, inputs)});
  }
  return rows;
}

double fit_noise_slope(const std::vector<NoiseSweepRow>& rows, double p_min,
                       double p_max) {
  std::vector<std::pair<double, double>> pts;
  for (const NoiseSweepRow& r : rows) {
    if (r.p >= p_min && r.p <= p_max) pts.emplace_back(r.p, r.stats.mean);
  }
  if (pts.size() < 2) {
    throw InvalidArgument("fit_noise_slope: need at least two points in range");
  }
  double mx = 0.0, my = 0.0;
  for (auto [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxy = 0.0, sxx = 0.0;
  for (auto [x, y] : pts) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  if (sxx == 0.0) throw InvalidArgument("fit_noise_slope: degenerate p values");
  return sxy / sxx;
}

std::vector<CalibrationRow> calibration_dataset(
    const std::vector<NoiseSweepRow>& noise, const std::vector<DeltaSweepRow>& logic) {
  if (noise.empty() || logic.empty()) {
    throw InvalidArgument("calibration_dataset: both sweeps must be non-empty");
  }
  std::vector<CalibrationRow> rows;
  rows.reserve(noise.size() + logic.size());
  for (const NoiseSweepRow& r : noise) rows.push_back({"noise_p95", r.p, r.stats.p95});
  for (const DeltaSweepRow& r : logic) {
    rows.push_back({"logic_full_dev", r.delta, r.full_dev});
  }
  return rows;
}

CalibrationWindow calibration_window(const std::vector<NoiseSweepRow>& noise,
                                     const std::vector<DeltaSweepRow>& logic,
                                     double p_operating, double delta_target) {
  if (noise.empty() || logic.empty()) {
    throw InvalidArgument("calibration_window: both sweeps must be non-empty");
  }
  auto n = std::find_if(noise.begin(), noise.end(),
                        [&](const NoiseSweepRow& r) { return r.p == p_operating; });
  auto l = std::find_if(logic.begin(), logic.end(), [&](const DeltaSweepRow& r) {
    return r.delta == delta_target;
  });
  if (n == noise.end() || l == logic.end()) {
    throw InvalidArgument("calibration_window: operating point not in sweep");
  }
  return {n->stats.p95, l->full_dev};
}

std::vector<double> default_p_values() {
  return {0.0, 0.001, 0.002, 0.005, 0.01, 0.02, 0.03, 0.05, 0.07, 0.10};
}

std::vector<double> default_delta_values() {
  return {0.0, 0.01, 0.02, 0.05, 0.1, 0.2, 0.4, 0.6, 0.8};
}

std::string format_sig9(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

void write_noise_csv(std::ostream& os, const std::vector<NoiseSweepRow>& rows) {
  os << "p,mean,std,p95\n";
  for (const NoiseSweepRow& r : rows) {
    os << format_sig9(r.p) << ',' << format_sig9(r.stats.mean) << ','
       << format_sig9(r.stats.std) << ',' << format_sig9(r.stats.p95) << '\n';
  }
}

void write_delta_csv(std::ostream& os, const std::vector<DeltaSweepRow>& rows) {
  os << "delta,full_dev,z_dev\n";
  for (const DeltaSweepRow& r : rows) {
    os << format_sig9(r.delta) << ',' << format_sig9(r.full_dev) << ','
       << format_sig9(r.z_dev) << '\n';
  }
}

void write_calibration_csv(std::ostream& os, const std::vector<CalibrationRow>& rows) {
  os << "series,x,y\n";
  for (const CalibrationRow& r : rows) {
    os << r.series << ',' << format_sig9(r.x) << ',' << format_sig9(r.y) << '\n';
  }
}

}  // namespace qcivet
