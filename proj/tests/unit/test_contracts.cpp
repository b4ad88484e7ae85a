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

#include "qcivet/contracts.hpp"
#include "qcivet/error.hpp"
#include "test_support.hpp"

namespace qcivet {
namespace {

constexpr double kTheta = 2.0 * std::numbers::pi / 5.0;

Channel ry_channel(double t) { return Channel::unitary(ry(t)); }

Channel good_candidate() {
  return Channel::compose({Channel::unitary(s_dagger()), Channel::unitary(rx(kTheta)),
                           Channel::unitary(s_gate())});
}

// Independent oracle for one deviation cell: Bloch vectors propagated by
// explicit rotation matrices, no density operators involved.
double ry_bloch_deviation(double t1, double t2, double x, double y, double z, int axis) {
  auto rot = [&](double t) {
    // Ry(t) rotates the Bloch vector about y by angle t.
    return std::array<double, 3>{std::cos(t) * x + std::sin(t) * z, y,
                                 -std::sin(t) * x + std::cos(t) * z};
  };
  return std::abs(rot(t1)[axis] - rot(t2)[axis]);
}

TEST(Contracts, ReferenceInputs) {
  const auto in = reference_inputs();
  ASSERT_EQ(in.size(), 6u);
  ASSERT_EQ(reference_input_labels().size(), 6u);
  EXPECT_EQ(pauli_eigenstates().size(), 4u);
  const DensityOperator psi1 = PureState::zero().evolved(rz(1.3) * ry(0.7));
  EXPECT_LT(testing::max_entry_diff(in[4].matrix(), psi1.matrix()), 1e-15);
}

TEST(Contracts, BadCandidateMatchesBlochOracle) {
  // Bloch vectors of the six inputs.
  const std::vector<std::array<double, 3>> bloch = {
      {0, 0, 1},
      {0, 0, -1},
      {1, 0, 0},
      {-1, 0, 0},
      {std::sin(0.7) * std::cos(1.3), std::sin(0.7) * std::sin(1.3), std::cos(0.7)},
      {std::sin(2.1) * std::cos(0.4), std::sin(2.1) * std::sin(0.4), std::cos(2.1)}};
  const Contract c(ObservableFamily::pauli(), 0.5, reference_inputs());
  const auto rep = worst_deviation(ry_channel(kTheta), ry_channel(kTheta + 0.4), c);
  double oracle = 0.0;
  for (std::size_t i = 0; i < bloch.size(); ++i) {
    const char* labels[] = {"X", "Y", "Z"};
    for (int ax = 0; ax < 3; ++ax) {
      const double d = ry_bloch_deviation(kTheta, kTheta + 0.4, bloch[i][0], bloch[i][1],
                                          bloch[i][2], ax);
      EXPECT_NEAR(rep.at(i, labels[ax]), d, 1e-13);
      oracle = std::max(oracle, d);
    }
  }
  EXPECT_NEAR(rep.worst, oracle, 1e-13);
  EXPECT_NEAR(rep.worst, 0.395, 2e-3);
  EXPECT_TRUE(rep.passed);
}

TEST(Contracts, TableRows) {
  const auto in = reference_inputs();
  const Channel a = ry_channel(kTheta);
  const Channel sneaky = make_sneaky(a, Observable::pauli_z());
  const auto full = ObservableFamily::pauli();
  const auto weak = ObservableFamily::weak_z();

  EXPECT_LE(max_deviation(a, good_candidate(), full, in), 1e-9);
  EXPECT_LE(max_deviation(a, good_candidate(), weak, in), 1e-9);
  EXPECT_NEAR(max_deviation(a, ry_channel(kTheta + 0.4), weak, in), 0.395, 2e-3);
  EXPECT_NEAR(max_deviation(a, sneaky, full, in), 1.401, 2e-3);
  EXPECT_LE(max_deviation(a, sneaky, weak, in), 1e-9);
}

TEST(Contracts, ReportInvariants) {
  std::mt19937_64 g(21);
  for (int i = 0; i < 100; ++i) {
    const Channel a = Channel::unitary(testing::random_unitary(g));
    const Channel b = Channel::unitary(testing::random_unitary(g));
    const Contract c(ObservableFamily::pauli(), 0.3, reference_inputs());
    const auto ab = worst_deviation(a, b, c);
    const auto ba = worst_deviation(b, a, c);
    EXPECT_NEAR(ab.worst, ba.worst, 1e-14);
    double mx = 0.0;
    for (const auto& [key, v] : ab.per_cell) mx = std::max(mx, v);
    EXPECT_EQ(mx, ab.worst);
    EXPECT_EQ(ab.passed, ab.worst <= 0.3);
    EXPECT_EQ(ab.per_cell.size(), 18u);
    // Monotone in tolerance.
    if (ab.passed) {
      const Contract looser(ObservableFamily::pauli(), 0.31, reference_inputs());
      EXPECT_TRUE(worst_deviation(a, b, looser).passed);
    }
  }
  const Contract c(ObservableFamily::pauli(), 0.0, reference_inputs());
  const auto same = worst_deviation(ry_channel(1.0), ry_channel(1.0), c);
  EXPECT_EQ(same.worst, 0.0);
  for (const auto& [key, v] : same.per_cell) EXPECT_EQ(v, 0.0);
}

TEST(Contracts, ContractValidation) {
  EXPECT_THROW(Contract(ObservableFamily::pauli(), -0.1, reference_inputs()), InvalidArgument);
  EXPECT_THROW(Contract(ObservableFamily::pauli(), 0.1, {}), InvalidArgument);
  EXPECT_THROW(Contract(ObservableFamily::pauli(), 0.1, {DensityOperator::maximally_mixed(4)}),
               InvalidArgument);
  EXPECT_THROW(ObservableFamily({}, "empty"), InvalidArgument);
  const Contract c(ObservableFamily::pauli(), 0.1, reference_inputs());
  const Channel two = Channel::identity(4);
  EXPECT_THROW(worst_deviation(two, two, c), InvalidArgument);
}

TEST(Contracts, InformationalCompleteness) {
  EXPECT_TRUE(is_informationally_complete(ObservableFamily::pauli()));
  EXPECT_FALSE(is_informationally_complete(ObservableFamily::weak_z()));
  const auto x = Observable::pauli_x(), y = Observable::pauli_y(), z = Observable::pauli_z();
  EXPECT_TRUE(is_informationally_complete(ObservableFamily({x, y, z, x}, "dup")));
  EXPECT_FALSE(is_informationally_complete(ObservableFamily({x, z}, "xz")));
  // X + Z, X - Z and Y span the same space as the Paulis.
  const Observable xpz(x_gate() + z_gate(), "X+Z"), xmz(x_gate() - z_gate(), "X-Z");
  EXPECT_TRUE(is_informationally_complete(ObservableFamily({xpz, xmz, y}, "rot")));
  EXPECT_TRUE(ObservableFamily({x, y, z, x}, "dup").is_pauli_family());
  EXPECT_FALSE(ObservableFamily({xpz, xmz, y}, "rot").is_pauli_family());
}

TEST(Contracts, SpectrumBound) {
  EXPECT_NEAR(ObservableFamily::pauli().spectrum_bound(), 1.0, 1e-14);
  const Observable big(2.5 * z_gate(), "2.5Z");
  EXPECT_NEAR(ObservableFamily({big, Observable::pauli_x()}, "f").spectrum_bound(), 2.5, 1e-14);
}

TEST(Sneaky, IdentityOnZero) {
  const Channel s = make_sneaky(Channel::identity(), Observable::pauli_z());
  const DensityOperator zero = PureState::zero();
  EXPECT_LT(testing::max_entry_diff(s.apply(zero).matrix(), zero.matrix()), 1e-15);
}

TEST(Sneaky, ZeroZDeviationForRandomUnitaries) {
  std::mt19937_64 g(23);
  for (int i = 0; i < 100; ++i) {
    const Channel a = Channel::unitary(testing::random_unitary(g));
    const Channel b = make_sneaky(a, Observable::pauli_z());
    std::vector<DensityOperator> states = reference_inputs();
    for (int k = 0; k < 10; ++k) states.push_back(testing::random_density(g));
    EXPECT_LE(max_deviation(a, b, ObservableFamily::weak_z(), states), 1e-9);
  }
}

TEST(Sneaky, UnsupportedWitness) {
  EXPECT_THROW(make_sneaky(ry_channel(1.0), Observable::pauli_x()), InvalidArgument);
  EXPECT_THROW(make_sneaky(Channel::identity(4), Observable::pauli_z()), InvalidArgument);
}

TEST(Sneaky, ZeroFullDeviationForcesZeroDiamond) {
  // Converse direction: a candidate agreeing on every Pauli at the six inputs
  // is the same channel. Phase-shifted copies and tiny perturbations.
  std::mt19937_64 g(29);
  std::uniform_real_distribution<double> ph(0.0, 2 * std::numbers::pi);
  for (int i = 0; i < 100; ++i) {
    const ComplexMatrix u = testing::random_unitary(g);
    const ComplexMatrix v = std::polar(1.0, ph(g)) * u;
    const double dev =
        max_deviation(Channel::unitary(u), Channel::unitary(v), ObservableFamily::pauli(),
                      reference_inputs());
    EXPECT_LE(dev, 1e-9);
    EXPECT_LE(diamond_distance_unitary(u, v), 2 * std::sqrt(2.0) * 1e-9 + 1e-8);
  }
}

TEST(Bounds, SoundnessExamples) {
  const auto in = reference_inputs();
  const auto fam = ObservableFamily::pauli();
  const auto same = soundness_margin(ry_channel(1.0), ry_channel(1.0), fam, in);
  EXPECT_NEAR(same.lhs, 0.0, 1e-15);
  EXPECT_NEAR(same.rhs, 0.0, 1e-15);
  const auto b = soundness_margin(ry_channel(kTheta), ry_channel(kTheta + 0.4), fam, in);
  EXPECT_NEAR(b.lhs, 0.395, 2e-3);
  EXPECT_NEAR(b.rhs, 0.397, 1e-3);
  EXPECT_TRUE(b.holds());
  EXPECT_THROW(soundness_margin(Channel::depolarizing(0.1), ry_channel(1.0), fam, in),
               Unsupported);
}

TEST(Bounds, SoundnessSweep) {
  std::mt19937_64 g(31);
  for (int i = 0; i < 200; ++i) {
    const Channel a = Channel::unitary(testing::random_unitary(g));
    const Channel b = Channel::unitary(testing::random_unitary(g));
    std::vector<DensityOperator> states = reference_inputs();
    for (int k = 0; k < 5; ++k) states.push_back(testing::random_density(g));
    EXPECT_TRUE(soundness_margin(a, b, ObservableFamily::pauli(), states).holds());
  }
}

TEST(Bounds, CompletenessExamples) {
  const auto same = completeness_bound(ry_channel(0.5), ry_channel(0.5));
  EXPECT_NEAR(same.lhs, 0.0, 1e-15);
  EXPECT_NEAR(same.rhs, 0.0, 1e-15);
  const auto r = completeness_bound(ry_channel(kTheta), ry_channel(kTheta + 0.4));
  EXPECT_NEAR(r.lhs, 0.397, 1e-3);
  // Worst Pauli-eigenstate deviation of the Ry pair, by hand: for |0>,
  // |<X>| changes by |sin(t + 0.4) - sin t| and |<Z>| by |cos(t + 0.4) - cos t|.
  const double hand = std::max(std::abs(std::sin(kTheta + 0.4) - std::sin(kTheta)),
                               std::abs(std::cos(kTheta + 0.4) - std::cos(kTheta)));
  EXPECT_NEAR(r.rhs, kPauliCompletenessConstant * hand, 1e-12);
  EXPECT_GE(hand, 0.389);
  EXPECT_TRUE(r.holds());
  EXPECT_THROW(completeness_bound(Channel::depolarizing(0.2), ry_channel(0.1)), Unsupported);
}

TEST(Bounds, CompletenessSweep) {
  std::mt19937_64 g(37);
  for (int i = 0; i < 200; ++i) {
    EXPECT_TRUE(completeness_bound(Channel::unitary(testing::random_unitary(g)),
                                   Channel::unitary(testing::random_unitary(g)))
                    .holds());
  }
}

TEST(Bounds, CompositionExamples) {
  const auto fam = ObservableFamily::pauli();
  const Channel a = ry_channel(kTheta);
  const auto same = composition_bound(a, a, a, a, fam, fam, 0.0, 0.0);
  EXPECT_NEAR(same.lhs, 0.0, 1e-15);
  EXPECT_GE(same.rhs, 0.0);

  const Channel b = ry_channel(kTheta + 0.05);
  const auto [e1, e2] = measured_stage_deviations(a, b, a, b, fam, fam, reference_inputs());
  const auto r = composition_bound(a, b, a, b, fam, fam, e1, e2);
  EXPECT_TRUE(r.holds());
  EXPECT_NEAR(r.rhs, e2 + std::sqrt(2.0) * e1, 1e-15);
}

TEST(Bounds, CompositionHypothesisChecked) {
  const auto fam = ObservableFamily::pauli();
  const Channel a = ry_channel(kTheta);
  const Channel b = ry_channel(kTheta + 0.4);
  EXPECT_THROW(composition_bound(a, b, a, a, fam, fam, 0.01, 0.0), InvalidArgument);
  EXPECT_THROW(composition_bound(a, a, a, b, fam, fam, 0.0, 0.01), InvalidArgument);
  EXPECT_THROW(composition_bound(a, a, a, a, ObservableFamily::weak_z(), fam, 0.0, 0.0),
               Unsupported);
}

TEST(Bounds, CompositionSweep) {
  RandomStream root(4242);
  const auto fam = ObservableFamily::pauli();
  for (std::uint64_t i = 0; i < 200; ++i) {
    RandomStream rng = root.split({i});
    const ComplexMatrix u1 = haar_unitary(rng), u2 = haar_unitary(rng);
    const Channel a1 = Channel::unitary(u1), a2 = Channel::unitary(u2);
    const Channel b1 = Channel::unitary(perturbed_unitary(u1, 0.1 * rng.uniform(), rng));
    const Channel b2 = Channel::unitary(perturbed_unitary(u2, 0.1 * rng.uniform(), rng));
    const auto [e1, e2] = measured_stage_deviations(a1, b1, a2, b2, fam, fam, reference_inputs());
    EXPECT_TRUE(composition_bound(a1, b1, a2, b2, fam, fam, e1, e2).holds()) << "config " << i;
  }
}

TEST(Random, HaarUnitaryIsUnitaryAndDeterministic) {
  RandomStream a(7), b(7);
  for (int i = 0; i < 100; ++i) {
    const ComplexMatrix u = haar_unitary(a);
    EXPECT_TRUE(u.is_unitary(1e-12));
    EXPECT_EQ(testing::max_entry_diff(u, haar_unitary(b)), 0.0);
  }
}

TEST(Random, PerturbationSize) {
  RandomStream rng(9);
  const ComplexMatrix u = haar_unitary(rng);
  for (double s : {0.0, 0.01, 0.1, 0.5}) {
    const ComplexMatrix v = perturbed_unitary(u, s, rng);
    EXPECT_TRUE(v.is_unitary(1e-12));
    EXPECT_NEAR(diamond_distance_unitary(u, v), 2.0 * std::sin(s), 1e-12);
  }
}

}  // namespace
}  // namespace qcivet
