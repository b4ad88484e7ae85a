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

// Shot-based Pauli estimation under per-gate depolarizing noise, and the
// noise / over-rotation calibration sweeps built on it.
//
// Shots are drawn from the exact Z-basis distribution of the analytically
// computed noisy state rather than from per-shot gate trajectories. For
// depolarizing noise the two are identically distributed.

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qcivet/contracts.hpp"
#include "qcivet/qcore.hpp"
#include "qcivet/rng.hpp"

namespace qcivet {

inline constexpr std::uint64_t kDefaultSeed = 20260415;

struct ShotConfig {
  std::size_t shots = 4096;
  std::size_t trials = 20;
  std::uint64_t seed = kDefaultSeed;

  void validate() const;
};

struct NoiseSpec {
  /// Depolarizing probability applied after every single-qubit gate.
  double gate_p = 0.0;
  /// Probability that a measured bit is flipped at readout.
  double readout_flip = 0.0;

  void validate() const;
};

struct TrialStats {
  double mean = 0.0;
  /// Sample standard deviation (n - 1 denominator; 0 for a single trial).
  double std = 0.0;
  /// Nearest-rank 95th percentile: sorted[ceil(0.95 n) - 1].
  double p95 = 0.0;
  std::vector<double> samples;

  static TrialStats from_samples(std::vector<double> samples);
};

/// Gates appended to measure `pauli` in the Z basis: {} for Z, {H} for X,
/// {S†, H} for Y. Throws InvalidArgument for anything that is not a Pauli.
std::vector<ComplexMatrix> basis_change_gates(const Observable& pauli);

/// State just before measurement: state_prep's elementary parts applied in
/// order (unitary parts followed by a depolarizing layer of gate_p), then
/// each basis-change gate followed by its own depolarizing layer.
DensityOperator noisy_measurement_state(const Channel& state_prep,
                                        const DensityOperator& input,
                                        const Observable& pauli,
                                        double gate_p);

/// Probability of reading bit 0, including readout flips.
double zero_outcome_probability(const Channel& state_prep,
                                const DensityOperator& input,
                                const Observable& pauli, const NoiseSpec& noise);

/// Shot estimate (n0 - n1) / shots of <pauli> after state_prep. One uniform
/// per shot decides the outcome, one more the readout flip when
/// readout_flip > 0.
double estimate_pauli(const Channel& state_prep, const DensityOperator& input,
                      const Observable& pauli, const NoiseSpec& noise,
                      std::size_t shots, RandomStream& rng);

struct NoiseSweepRow {
  double p = 0.0;
  TrialStats stats;
};

/// For every p and trial: worst |estimate(b under noise p) - exact <P> of
/// a_ref| over the three Paulis and `inputs`. Cell (p index, trial, input,
/// Pauli) draws from RandomStream::for_cell(seed, {p, trial, input, pauli}).
/// Rows are returned in p_values order.
std::vector<NoiseSweepRow> noise_sweep(const Channel& b, const Channel& a_ref,
                                       const std::vector<double>& p_values,
                                       const ShotConfig& cfg,
                                       const std::vector<DensityOperator>& inputs,
                                       double readout_flip = 0.0);
std::vector<NoiseSweepRow> noise_sweep(const Channel& b, const Channel& a_ref,
                                       const std::vector<double>& p_values,
                                       const ShotConfig& cfg);

struct DeltaSweepRow {
  double delta = 0.0;
  double full_dev = 0.0;  // worst {X,Y,Z} deviation
  double z_dev = 0.0;     // worst {Z} deviation
};

/// Analytic deviations of Ry(theta + delta) from Ry(theta) on the reference
/// inputs.
std::vector<DeltaSweepRow> delta_sweep(double theta,
                                       const std::vector<double>& delta_values);

/// Ordinary least-squares slope of mean deviation vs p over rows with
/// p in [p_min, p_max]. Throws InvalidArgument with fewer than two rows.
double fit_noise_slope(const std::vector<NoiseSweepRow>& rows, double p_min,
                       double p_max);

struct CalibrationRow {
  std::string series;  // "noise_p95" (x = p) or "logic_full_dev" (x = delta)
  double x = 0.0;
  double y = 0.0;
};

struct CalibrationWindow {
  double lower = 0.0;  // p95 noise floor at the operating noise level
  double upper = 0.0;  // full-contract deviation at the smallest target δ
  bool empty() const noexcept { return !(lower < upper); }
  bool contains(double eps) const noexcept { return lower < eps && eps < upper; }
};

/// Overlay dataset: one row per noise level, then one per δ.
std::vector<CalibrationRow> calibration_dataset(
    const std::vector<NoiseSweepRow>& noise, const std::vector<DeltaSweepRow>& logic);

/// Window between the noise p95 at `p_operating` and full_dev at
/// `delta_target`; both must be present in the sweeps (InvalidArgument
/// otherwise).
CalibrationWindow calibration_window(const std::vector<NoiseSweepRow>& noise,
                                     const std::vector<DeltaSweepRow>& logic,
                                     double p_operating, double delta_target);

/// Default grids: p values (0 … 0.10) and δ values (0 … 0.8).
std::vector<double> default_p_values();
std::vector<double> default_delta_values();

/// CSV writers (9 significant digits).
void write_noise_csv(std::ostream& os, const std::vector<NoiseSweepRow>& rows);
void write_delta_csv(std::ostream& os, const std::vector<DeltaSweepRow>& rows);
void write_calibration_csv(std::ostream& os, const std::vector<CalibrationRow>& rows);

/// "%.9g" rendering used by every CSV writer.
std::string format_sig9(double x);

}  // namespace qcivet
