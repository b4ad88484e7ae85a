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

#include "qcivet/contracts.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qcivet/error.hpp"

namespace qcivet {

namespace {

std::vector<double> vectorize_hermitian(const ComplexMatrix& m) {
  // Orthonormal coordinates of Herm(d) as a real vector space.
  std::vector<double> v;
  const std::size_t n = m.dim();
  v.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) v.push_back(m(i, i).real());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      v.push_back(std::numbers::sqrt2 * m(i, j).real());
      v.push_back(std::numbers::sqrt2 * m(i, j).imag());
    }
  }
  return v;
}

std::size_t numerical_rank(std::vector<std::vector<double>> rows, double tol) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    for (std::size_t r = rank; r < rows.size(); ++r) {
      if (std::abs(rows[r][c]) > std::abs(rows[pivot][c])) pivot = r;
    }
    if (std::abs(rows[pivot][c]) <= tol) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      const double f = rows[r][c] / rows[rank][c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

ComplexMatrix require_unitary(const Channel& c, const char* what) {
  auto u = c.as_unitary();
  if (!u) {
    throw Unsupported(std::string(what) +
                      ": exact diamond distance needs unitary channels");
  }
  return *u;
}

void require_dim_match(const Channel& a, const Channel& b, std::size_t dim,
                       const char* what) {
  if (a.dim() != dim || b.dim() != dim) {
    throw InvalidArgument(std::string(what) + ": channel dimension mismatch");
  }
}

}  // namespace

// ---------------------------------------------------------------------------

ObservableFamily::ObservableFamily(std::vector<Observable> observables,
                                   std::string name)
    : observables_(std::move(observables)), name_(std::move(name)) {
  if (observables_.empty()) {
    throw InvalidArgument("ObservableFamily: family must not be empty");
  }
  for (const Observable& o : observables_) {
    if (o.dim() != observables_.front().dim()) {
      throw InvalidArgument("ObservableFamily: observables of mixed dimension");
    }
  }
  if (!(spectrum_bound() > 0.0)) {
    throw InvalidArgument("ObservableFamily: spectrum bound must be positive");
  }
}

ObservableFamily ObservableFamily::pauli() {
  return ObservableFamily(
      {Observable::pauli_x(), Observable::pauli_y(), Observable::pauli_z()},
      "full-XYZ");
}

ObservableFamily ObservableFamily::weak_z() {
  return ObservableFamily({Observable::pauli_z()}, "weak-Z");
}

double ObservableFamily::spectrum_bound() const {
  double k = 0.0;
  for (const Observable& o : observables_) k = std::max(k, operator_norm(o.matrix()));
  return k;
}

bool ObservableFamily::is_pauli_family() const {
  if (dim() != 2) return false;
  const ComplexMatrix paulis[] = {x_gate(), y_gate(), z_gate()};
  bool seen[3] = {false, false, false};
  for (const Observable& o : observables_) {
    bool matched = false;
    for (int k = 0; k < 3; ++k) {
      if (o.matrix().approx_equal(paulis[k], 1e-12)) {
        seen[k] = matched = true;
      }
    }
    if (!matched) return false;
  }
  return seen[0] && seen[1] && seen[2];
}

Contract::Contract(ObservableFamily fam, double tol,
                   std::vector<DensityOperator> in)
    : family(std::move(fam)), tolerance(tol), inputs(std::move(in)) {
  if (!(tolerance >= 0.0) || !std::isfinite(tolerance)) {
    throw InvalidArgument("Contract: tolerance must be finite and >= 0");
  }
  if (inputs.empty()) throw InvalidArgument("Contract: input set is empty");
  for (const DensityOperator& rho : inputs) {
    if (rho.dim() != family.dim()) {
      throw InvalidArgument("Contract: input dimension does not match family");
    }
  }
}

// ---------------------------------------------------------------------------

std::vector<DensityOperator> pauli_eigenstates() {
  return {PureState::zero(), PureState::one(), PureState::plus(),
          PureState::minus()};
}

std::vector<DensityOperator> reference_inputs() {
  std::vector<DensityOperator> out = pauli_eigenstates();
  const PureState zero = PureState::zero();
  out.emplace_back(zero.evolved(rz(1.3) * ry(0.7)));
  out.emplace_back(zero.evolved(rz(0.4) * ry(2.1)));
  return out;
}

std::vector<std::string> reference_input_labels() {
  return {"0", "1", "+", "-", "psi1", "psi2"};
}

DeviationReport worst_deviation(const Channel& a, const Channel& b,
                                const Contract& contract) {
  require_dim_match(a, b, contract.family.dim(), "worst_deviation");
  DeviationReport report;
  report.tolerance = contract.tolerance;
  for (std::size_t i = 0; i < contract.inputs.size(); ++i) {
    const DensityOperator out_a = a.apply(contract.inputs[i]);
    const DensityOperator out_b = b.apply(contract.inputs[i]);
    for (const Observable& o : contract.family.observables()) {
      const double d = std::abs(expectation(o, out_b) - expectation(o, out_a));
      auto [it, inserted] = report.per_cell.emplace(
          DeviationReport::CellKey{i, o.label()}, d);
      if (!inserted) it->second = std::max(it->second, d);
      report.worst = std::max(report.worst, d);
    }
  }
  report.passed = report.worst <= contract.tolerance;
  return report;
}

double max_deviation(const Channel& a, const Channel& b,
                     const ObservableFamily& family,
                     const std::vector<DensityOperator>& inputs) {
  require_dim_match(a, b, family.dim(), "max_deviation");
  double worst = 0.0;
  for (const DensityOperator& rho : inputs) {
    const DensityOperator out_a = a.apply(rho);
    const DensityOperator out_b = b.apply(rho);
    for (const Observable& o : family.observables()) {
      worst = std::max(worst,
                       std::abs(expectation(o, out_b) - expectation(o, out_a)));
    }
  }
  return worst;
}

bool is_informationally_complete(const ObservableFamily& family) {
  const std::size_t d = family.dim();
  std::vector<std::vector<double>> rows;
  rows.push_back(vectorize_hermitian(ComplexMatrix::identity(d)));
  for (const Observable& o : family.observables()) {
    rows.push_back(vectorize_hermitian(o.matrix()));
  }
  return numerical_rank(std::move(rows), 1e-10) == d * d;
}

Channel make_sneaky(const Channel& a, const Observable& weak_obs) {
  if (a.dim() != 2) {
    throw InvalidArgument("make_sneaky: single-qubit channel required");
  }
  if (!weak_obs.matrix().approx_equal(z_gate(), 1e-12)) {
    throw InvalidArgument(
        "make_sneaky: only the Z-observable (S-witness) construction is "
        "implemented");
  }
  return Channel::compose({a, Channel::unitary(s_gate())});
}

BoundCheck soundness_margin(const Channel& a, const Channel& b,
                            const ObservableFamily& family,
                            const std::vector<DensityOperator>& inputs) {
  const ComplexMatrix ua = require_unitary(a, "soundness_margin");
  const ComplexMatrix ub = require_unitary(b, "soundness_margin");
  BoundCheck check;
  check.lhs = max_deviation(a, b, family, inputs);
  check.rhs = family.spectrum_bound() * diamond_distance_unitary(ua, ub);
  return check;
}

BoundCheck completeness_bound(const Channel& a, const Channel& b) {
  const ComplexMatrix ua = require_unitary(a, "completeness_bound");
  const ComplexMatrix ub = require_unitary(b, "completeness_bound");
  BoundCheck check;
  check.lhs = diamond_distance_unitary(ua, ub);
  check.rhs = kPauliCompletenessConstant *
              max_deviation(a, b, ObservableFamily::pauli(), pauli_eigenstates());
  return check;
}

namespace {

std::vector<DensityOperator> stage_two_states(
    const Channel& b1, const std::vector<DensityOperator>& inputs) {
  std::vector<DensityOperator> states = inputs;
  for (const DensityOperator& rho : inputs) states.push_back(b1.apply(rho));
  return states;
}

}  // namespace

std::pair<double, double> measured_stage_deviations(
    const Channel& a1, const Channel& b1, const Channel& a2, const Channel& b2,
    const ObservableFamily& fam1, const ObservableFamily& fam2,
    const std::vector<DensityOperator>& inputs) {
  return {max_deviation(a1, b1, fam1, inputs),
          max_deviation(a2, b2, fam2, stage_two_states(b1, inputs))};
}

BoundCheck composition_bound(const Channel& a1, const Channel& b1,
                             const Channel& a2, const Channel& b2,
                             const ObservableFamily& fam1,
                             const ObservableFamily& fam2, double eps1,
                             double eps2,
                             const std::vector<DensityOperator>& inputs) {
  if (!fam1.is_pauli_family()) {
    throw Unsupported(
        "composition_bound: the norming constant is only known for the Pauli "
        "family");
  }
  if (!(eps1 >= 0.0) || !(eps2 >= 0.0)) {
    throw InvalidArgument("composition_bound: tolerances must be >= 0");
  }
  const auto [dev1, dev2] =
      measured_stage_deviations(a1, b1, a2, b2, fam1, fam2, inputs);
  if (dev1 > eps1 + kBoundSlack) {
    throw InvalidArgument("composition_bound: stage-1 deviation " +
                          std::to_string(dev1) + " exceeds eps1");
  }
  if (dev2 > eps2 + kBoundSlack) {
    throw InvalidArgument("composition_bound: stage-2 deviation " +
                          std::to_string(dev2) + " exceeds eps2");
  }
  const Channel a = Channel::compose({a1, a2});
  const Channel b = Channel::compose({b1, b2});
  BoundCheck check;
  check.lhs = max_deviation(a, b, fam2, inputs);
  check.rhs = eps2 + fam2.spectrum_bound() * kPauliNormingConstant * eps1;
  return check;
}

BoundCheck composition_bound(const Channel& a1, const Channel& b1,
                             const Channel& a2, const Channel& b2,
                             const ObservableFamily& fam1,
                             const ObservableFamily& fam2, double eps1,
                             double eps2) {
  return composition_bound(a1, b1, a2, b2, fam1, fam2, eps1, eps2,
                           reference_inputs());
}

// ---------------------------------------------------------------------------

ComplexMatrix haar_unitary(RandomStream& rng) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  const double xi = rng.uniform();
  const double phi = std::asin(std::sqrt(xi));
  const double psi = kTwoPi * rng.uniform();
  const double chi = kTwoPi * rng.uniform();
  const double alpha = kTwoPi * rng.uniform();
  const Complex g = std::polar(1.0, alpha);
  return ComplexMatrix(2, {g * std::polar(std::cos(phi), psi),
                           g * std::polar(std::sin(phi), chi),
                           -g * std::polar(std::sin(phi), -chi),
                           g * std::polar(std::cos(phi), -psi)});
}

ComplexMatrix perturbed_unitary(const ComplexMatrix& u, double size,
                                RandomStream& rng) {
  const double z = 2.0 * rng.uniform() - 1.0;
  const double az = 2.0 * std::numbers::pi * rng.uniform();
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  const double nx = r * std::cos(az), ny = r * std::sin(az), nz = z;
  // exp(-i s n·σ) = cos s I - i sin s n·σ
  const double c = std::cos(size), s = std::sin(size);
  const Complex mi(0.0, -1.0);
  const ComplexMatrix step(
      2, {c + mi * s * nz, mi * s * Complex(nx, -ny), mi * s * Complex(nx, ny),
          c - mi * s * nz});
  return step * u;
}

}  // namespace qcivet
