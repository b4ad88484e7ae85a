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

#include <cmath>
#include <numbers>
#include <sstream>

#include "qcivet/error.hpp"
#include "qcivet/sampling.hpp"
#include "test_support.hpp"

namespace qcivet {
namespace {

constexpr double kTheta = 2.0 * std::numbers::pi / 5.0;

TEST(Rng, SplitStreamsAreDeterministicAndDistinct) {
  RandomStream a = RandomStream::for_cell(1, {2, 3});
  RandomStream b = RandomStream::for_cell(1, {2, 3});
  RandomStream c = RandomStream::for_cell(1, {3, 2});
  for (int i = 0; i < 10; ++i) {
    const auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    EXPECT_NE(x, c.next_u64());
  }
  RandomStream u(5);
  for (int i = 0; i < 1000; ++i) {
    const double v = u.uniform();
    EXPECT_GE(v, 0.0);
    EXPECT_LT(v, 1.0);
  }
}

TEST(Basis, GateSequences) {
  EXPECT_TRUE(basis_change_gates(Observable::pauli_z()).empty());
  const auto x = basis_change_gates(Observable::pauli_x());
  ASSERT_EQ(x.size(), 1u);
  EXPECT_LT(testing::max_entry_diff(x[0], h_gate()), 1e-15);
  const auto y = basis_change_gates(Observable::pauli_y());
  ASSERT_EQ(y.size(), 2u);
  EXPECT_LT(testing::max_entry_diff(y[0], s_dagger()), 1e-15);
  EXPECT_LT(testing::max_entry_diff(y[1], h_gate()), 1e-15);
  EXPECT_THROW(basis_change_gates(Observable(x_gate() + z_gate(), "X+Z")), InvalidArgument);
}

// Oracle: a depolarizing layer shrinks the Bloch vector by (1 - p), so after
// k noisy gates the measured Pauli is (1 - p)^k times its ideal value, and a
// readout flip f scales it by (1 - 2f).
double shrink_oracle(double ideal, int gates, double p, double flip = 0.0) {
  return ideal * std::pow(1.0 - p, gates) * (1.0 - 2.0 * flip);
}

TEST(Noise, MeasurementStateMatchesShrinkOracle) {
  const Channel prep = Channel::compose({Channel::unitary(rz(0.3)), Channel::unitary(ry(kTheta))});
  const DensityOperator zero = PureState::zero();
  const DensityOperator ideal = prep.apply(zero);
  const double p = 0.07;
  const Observable paulis[] = {Observable::pauli_x(), Observable::pauli_y(),
                               Observable::pauli_z()};
  const int basis_gates[] = {1, 2, 0};
  for (int k = 0; k < 3; ++k) {
    const auto rho = noisy_measurement_state(prep, zero, paulis[k], p);
    const double measured_z = expectation(Observable::pauli_z(), rho);
    EXPECT_NEAR(measured_z, shrink_oracle(expectation(paulis[k], ideal), 2 + basis_gates[k], p),
                1e-14);
    const double p0 = zero_outcome_probability(prep, zero, paulis[k], {p, 0.1});
    EXPECT_NEAR(2 * p0 - 1,
                shrink_oracle(expectation(paulis[k], ideal), 2 + basis_gates[k], p, 0.1), 1e-14);
  }
}

TEST(Estimate, DeterministicOnEigenstate) {
  RandomStream rng(1);
  EXPECT_EQ(estimate_pauli(Channel::identity(), PureState::zero(), Observable::pauli_z(), {},
                           4096, rng),
            1.0);
}

TEST(Estimate, RyZWithinThreeSigma) {
  const double sigma = std::sqrt((1 - std::pow(std::cos(kTheta), 2)) / 4096.0);
  for (std::uint64_t s = 0; s < 20; ++s) {
    RandomStream rng(s);
    const double e = estimate_pauli(Channel::unitary(ry(kTheta)), PureState::zero(),
                                    Observable::pauli_z(), {}, 4096, rng);
    EXPECT_NEAR(e, std::cos(kTheta), 3 * sigma);
  }
}

TEST(Estimate, FullyMixedIsZero) {
  for (const auto& o : {Observable::pauli_x(), Observable::pauli_y(), Observable::pauli_z()}) {
    RandomStream rng(77);
    const double e = estimate_pauli(Channel::unitary(ry(kTheta)), PureState::zero(), o,
                                    {1.0, 0.0}, 4096, rng);
    EXPECT_NEAR(e, 0.0, 3.0 / 64.0);
  }
}

TEST(Estimate, UnbiasedAgainstAnalyticNoisyValue) {
  const Channel prep = Channel::unitary(ry(kTheta));
  const DensityOperator zero = PureState::zero();
  const NoiseSpec noise{0.03, 0.02};
  const std::size_t shots = 256;
  for (const auto& [obs, gates, ideal] :
       {std::tuple{Observable::pauli_x(), 2, std::sin(kTheta)},
        std::tuple{Observable::pauli_z(), 1, std::cos(kTheta)}}) {
    const double truth = shrink_oracle(ideal, gates, noise.gate_p, noise.readout_flip);
    double sum = 0.0;
    for (std::uint64_t t = 0; t < 1000; ++t) {
      RandomStream rng = RandomStream::for_cell(99, {t});
      sum += estimate_pauli(prep, zero, obs, noise, shots, rng);
    }
    const double mean = sum / 1000.0;
    const double se = std::sqrt((1 - truth * truth) / shots / 1000.0);
    EXPECT_LE(std::abs(mean - truth), 4 * se) << obs.label();
  }
}

TEST(Estimate, InvalidArguments) {
  RandomStream rng(1);
  const Channel id = Channel::identity();
  const DensityOperator zero = PureState::zero();
  EXPECT_THROW(estimate_pauli(id, zero, Observable::pauli_z(), {1.5, 0.0}, 10, rng),
               InvalidArgument);
  EXPECT_THROW(estimate_pauli(id, zero, Observable::pauli_z(), {0.0, -0.1}, 10, rng),
               InvalidArgument);
  EXPECT_THROW(estimate_pauli(id, zero, Observable::pauli_z(), {}, 0, rng), InvalidArgument);
  EXPECT_THROW(estimate_pauli(id, zero, Observable(2.0 * z_gate(), "2Z"), {}, 10, rng),
               InvalidArgument);
  EXPECT_THROW(estimate_pauli(Channel::identity(4), DensityOperator::maximally_mixed(4),
                              Observable::pauli_z(), {}, 10, rng),
               InvalidArgument);
}

TEST(TrialStats, HandComputed) {
  const auto st = TrialStats::from_samples({3.0, 1.0, 4.0, 2.0});
  EXPECT_DOUBLE_EQ(st.mean, 2.5);
  EXPECT_NEAR(st.std, std::sqrt(5.0 / 3.0), 1e-15);
  EXPECT_EQ(st.p95, 4.0);
  std::vector<double> twenty;
  for (int i = 1; i <= 20; ++i) twenty.push_back(i);
  EXPECT_EQ(TrialStats::from_samples(twenty).p95, 19.0);  // ceil(0.95 * 20) = 19
  const auto one = TrialStats::from_samples({0.7});
  EXPECT_EQ(one.std, 0.0);
  EXPECT_EQ(one.p95, 0.7);
}

TEST(NoiseSweep, ZeroNoiseShotFloorAndInvariants) {
  const Channel a = Channel::unitary(ry(kTheta));
  const ShotConfig cfg{4096, 20, 5};
  const auto rows = noise_sweep(a, a, {0.0, 0.02, 0.1}, cfg);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].p, 0.0);
  EXPECT_EQ(rows[2].p, 0.1);
  EXPECT_LE(rows[0].stats.mean, 3.0 / std::sqrt(4096.0));
  for (const auto& r : rows) {
    EXPECT_EQ(r.stats.samples.size(), 20u);
    EXPECT_GE(r.stats.p95, r.stats.mean);
    EXPECT_GE(r.stats.p95, r.stats.mean - 5 * r.stats.std);
    const auto [lo, hi] = std::minmax_element(r.stats.samples.begin(), r.stats.samples.end());
    EXPECT_GE(r.stats.p95, *lo);
    EXPECT_LE(r.stats.p95, *hi);
  }
}

TEST(NoiseSweep, DeterministicAndSeedSensitive) {
  const Channel a = Channel::unitary(ry(kTheta));
  const auto r1 = noise_sweep(a, a, {0.0, 0.01}, {512, 5, 11});
  const auto r2 = noise_sweep(a, a, {0.0, 0.01}, {512, 5, 11});
  const auto r3 = noise_sweep(a, a, {0.0, 0.01}, {512, 5, 12});
  for (std::size_t i = 0; i < r1.size(); ++i) {
    EXPECT_EQ(r1[i].stats.samples, r2[i].stats.samples);
  }
  EXPECT_NE(r1[0].stats.samples, r3[0].stats.samples);
  // A cell's result does not depend on which other p values are swept.
  const auto solo = noise_sweep(a, a, {0.0}, {512, 5, 11});
  EXPECT_EQ(solo[0].stats.samples, r1[0].stats.samples);
}

TEST(NoiseSweep, RejectsBadConfig) {
  const Channel a = Channel::identity();
  EXPECT_THROW(noise_sweep(a, a, {0.0}, {0, 1, 1}), InvalidArgument);
  EXPECT_THROW(noise_sweep(a, a, {0.0}, {1, 0, 1}), InvalidArgument);
  EXPECT_THROW(noise_sweep(a, a, {1.2}, {1, 1, 1}), InvalidArgument);
}

// Strict non-decrease in the noise-dominated region; in the flat shot-noise
// region (p <= 0.005) consecutive means may dip by up to three standard
// errors of their difference.
TEST(NoiseSweep, MonotoneInP) {
  const auto p = default_p_values();
  const ShotConfig cfg{4096, 50, kDefaultSeed};
  const auto rows = noise_sweep(Channel::unitary(ry(kTheta)), Channel::unitary(ry(kTheta)), p, cfg);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& lo = rows[i - 1].stats;
    const auto& hi = rows[i].stats;
    if (rows[i - 1].p >= 0.005) {
      EXPECT_GE(hi.mean, lo.mean) << "p=" << rows[i].p;
    } else {
      const double se = std::sqrt((lo.std * lo.std + hi.std * hi.std) / 50.0);
      EXPECT_GE(hi.mean, lo.mean - 3 * se) << "p=" << rows[i].p;
    }
  }
}

TEST(DeltaSweep, Values) {
  const auto rows = delta_sweep(kTheta, default_delta_values());
  ASSERT_EQ(rows.size(), 9u);
  EXPECT_EQ(rows[0].full_dev, 0.0);
  EXPECT_EQ(rows[0].z_dev, 0.0);
  for (const auto& r : rows) {
    if (r.delta == 0.4) {
      EXPECT_NEAR(r.full_dev, 0.395, 2e-3);
    }
    if (r.delta == 0.05) {
      EXPECT_NEAR(r.full_dev, 0.05, 0.005);
    }
    EXPECT_LE(r.z_dev, r.full_dev + 1e-15);
  }
}

// Oracle: Ry(theta + delta) vs Ry(theta) moves a Bloch vector in the x-z
// plane at angle phi by a chord of length 2 sin(delta/2), and the Pauli
// eigenstates put phi on theta + k pi/2.
TEST(DeltaSweep, ClosedForm) {
  for (const auto& r : delta_sweep(kTheta, default_delta_values())) {
    const double h = r.delta / 2;
    const double want = 2 * std::sin(h) *
                        std::max(std::abs(std::cos(kTheta + h)), std::abs(std::sin(kTheta + h)));
    EXPECT_NEAR(r.full_dev, want, 1e-12) << r.delta;
  }
}

TEST(Fit, SlopeOfSyntheticLine) {
  std::vector<NoiseSweepRow> rows;
  for (double p : {0.0, 0.001, 0.01, 0.05, 0.1}) {
    NoiseSweepRow r;
    r.p = p;
    r.stats.mean = 0.02 + 2.0 * p + (p > 0.05 ? 1.0 : 0.0);  // outlier outside range
    rows.push_back(r);
  }
  EXPECT_NEAR(fit_noise_slope(rows, 0.001, 0.05), 2.0, 1e-12);
  EXPECT_THROW(fit_noise_slope(rows, 0.2, 0.3), InvalidArgument);
}

TEST(Calibration, WindowAndDataset) {
  std::vector<NoiseSweepRow> noise(2);
  noise[0].p = 0.001;
  noise[0].stats.p95 = 0.03;
  noise[1].p = 0.05;
  noise[1].stats.p95 = 0.5;
  const auto logic = delta_sweep(kTheta, {0.05, 0.4});
  EXPECT_EQ(calibration_dataset(noise, logic).size(), 4u);

  const auto ok = calibration_window(noise, logic, 0.001, 0.4);
  EXPECT_FALSE(ok.empty());
  EXPECT_TRUE(ok.contains(0.04));
  EXPECT_FALSE(ok.contains(0.5));
  // p95 above full_dev(delta_target): empty window.
  EXPECT_TRUE(calibration_window(noise, logic, 0.05, 0.4).empty());
  EXPECT_THROW(calibration_window(noise, logic, 0.002, 0.4), InvalidArgument);
  EXPECT_THROW(calibration_dataset({}, logic), InvalidArgument);
}

TEST(Csv, Formats) {
  std::ostringstream n, d, c;
  NoiseSweepRow r;
  r.p = 0.001;
  r.stats = TrialStats::from_samples({0.1, 0.2});
  write_noise_csv(n, {r});
  EXPECT_EQ(n.str(), "p,mean,std,p95\n0.001,0.15,0.0707106781,0.2\n");
  write_delta_csv(d, {{0.4, 0.25, 0.125}});
  EXPECT_EQ(d.str(), "delta,full_dev,z_dev\n0.4,0.25,0.125\n");
  write_calibration_csv(c, {{"noise_p95", 0.0, 1.0 / 3.0}});
  EXPECT_EQ(c.str(), "series,x,y\nnoise_p95,0,0.333333333\n");
}

TEST(Defaults, Grids) {
  const auto p = default_p_values();
  EXPECT_EQ(p.size(), 10u);
  EXPECT_EQ(p.front(), 0.0);
  EXPECT_EQ(p.back(), 0.10);
  EXPECT_EQ(default_delta_values(),
            (std::vector<double>{0, 0.01, 0.02, 0.05, 0.1, 0.2, 0.4, 0.6, 0.8}));
}

}  // namespace
}  // namespace qcivet
