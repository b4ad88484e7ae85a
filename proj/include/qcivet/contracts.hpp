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

// Observable-deviation contracts between channels.
//
// B satisfies the contract (family, eps) of A on a state set S when
//   max_{rho in S, O in family} |Tr(O B(rho)) - Tr(O A(rho))| <= eps.
// The bound checks below evaluate both sides of the soundness, completeness
// and composition inequalities numerically so they can be swept as
// properties.

#pragma once

#include <cstddef>
#include <map>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "qcivet/qcore.hpp"
#include "qcivet/rng.hpp"

namespace qcivet {

/// Norming constant c for the single-qubit Pauli family, used by the
/// composition bound: ||sigma||_1 <= c max_P |Tr(P sigma)|.
inline constexpr double kPauliNormingConstant = std::numbers::sqrt2;
/// Completeness constant C = 2 c for the Pauli family on the four Pauli
/// eigenstates.
inline constexpr double kPauliCompletenessConstant = 2.0 * std::numbers::sqrt2;
/// Slack added to the right-hand side of every bound check.
inline constexpr double kBoundSlack = 1e-9;

class ObservableFamily {
 public:
  /// Throws InvalidArgument if empty or of mixed dimension.
  ObservableFamily(std::vector<Observable> observables, std::string name);

  static ObservableFamily pauli();   // {X, Y, Z}, "full-XYZ"
  static ObservableFamily weak_z();  // {Z}, "weak-Z"

  const std::vector<Observable>& observables() const noexcept { return observables_; }
  const std::string& name() const noexcept { return name_; }
  std::size_t dim() const noexcept { return observables_.front().dim(); }

  /// K = max over the family of the operator norm.
  double spectrum_bound() const;

  /// True when the family contains X, Y and Z and nothing else (duplicates
  /// allowed), i.e. the norming constant above applies.
  bool is_pauli_family() const;

 private:
  std::vector<Observable> observables_;
  std::string name_;
};

struct Contract {
  /// Throws InvalidArgument on negative/non-finite tolerance, empty inputs or
  /// dimension mismatch between inputs and family.
  Contract(ObservableFamily family, double tolerance,
           std::vector<DensityOperator> inputs);

  ObservableFamily family;
  double tolerance;
  std::vector<DensityOperator> inputs;
};

struct DeviationReport {
  using CellKey = std::pair<std::size_t, std::string>;  // (input index, label)

  double worst = 0.0;
  double tolerance = 0.0;
  std::map<CellKey, double> per_cell;
  bool passed = true;

  double at(std::size_t input_index, const std::string& label) const {
    return per_cell.at({input_index, label});
  }
};

/// Result of evaluating one side of a bound against the other.
struct BoundCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds() const noexcept { return lhs <= rhs + kBoundSlack; }
};

/// The four Pauli eigenstates |0>, |1>, |+>, |->.
std::vector<DensityOperator> pauli_eigenstates();

/// Pauli eigenstates plus Rz(1.3)Ry(0.7)|0> and Rz(0.4)Ry(2.1)|0>. The
/// off-axis pair keeps all three Pauli expectations of Ry(2π/5) away from
/// zero on every input.
std::vector<DensityOperator> reference_inputs();
/// Labels matching reference_inputs(): "0", "1", "+", "-", "psi1", "psi2".
std::vector<std::string> reference_input_labels();

DeviationReport worst_deviation(const Channel& a, const Channel& b,
                                const Contract& contract);

/// Worst deviation only, without the per-cell table.
double max_deviation(const Channel& a, const Channel& b,
                     const ObservableFamily& family,
                     const std::vector<DensityOperator>& inputs);

/// Whether the real span of {I} ∪ family is all Hermitian matrices of that
/// dimension.
bool is_informationally_complete(const ObservableFamily& family);

/// The S-witness sneaky override: a followed by S-conjugation. Matches a
/// exactly on <Z> for every input. Only weak_obs = Z is supported.
Channel make_sneaky(const Channel& a, const Observable& weak_obs);

/// lhs = worst deviation of b from a over inputs; rhs = K * diamond(a, b).
/// Throws Unsupported unless both channels reduce to unitaries.
BoundCheck soundness_margin(const Channel& a, const Channel& b,
                            const ObservableFamily& family,
                            const std::vector<DensityOperator>& inputs);

/// lhs = diamond(a, b); rhs = 2√2 * worst Pauli deviation over the four
/// Pauli eigenstates. Throws Unsupported unless both are single-qubit
/// unitaries.
BoundCheck completeness_bound(const Channel& a, const Channel& b);

/// Composition of two contract-satisfying stage pairs.
///
/// Verifies b1 ⪯(fam1, eps1) a1 on `inputs` and b2 ⪯(fam2, eps2) a2 on the
/// states stage 2 receives (inputs and b1(inputs)); throws InvalidArgument if
/// either hypothesis fails. fam1 must be the Pauli family (Unsupported
/// otherwise).
/// lhs = worst fam2-deviation of b2∘b1 from a2∘a1 on inputs;
/// rhs = eps2 + K2 * √2 * eps1.
BoundCheck composition_bound(const Channel& a1, const Channel& b1,
                             const Channel& a2, const Channel& b2,
                             const ObservableFamily& fam1,
                             const ObservableFamily& fam2, double eps1,
                             double eps2,
                             const std::vector<DensityOperator>& inputs);
BoundCheck composition_bound(const Channel& a1, const Channel& b1,
                             const Channel& a2, const Channel& b2,
                             const ObservableFamily& fam1,
                             const ObservableFamily& fam2, double eps1,
                             double eps2);

/// The worst deviation each stage needs to satisfy the composition
/// hypotheses, measured on the same state sets composition_bound checks.
std::pair<double, double> measured_stage_deviations(
    const Channel& a1, const Channel& b1, const Channel& a2, const Channel& b2,
    const ObservableFamily& fam1, const ObservableFamily& fam2,
    const std::vector<DensityOperator>& inputs);

/// Haar-random 2x2 unitary:
///   e^{iα} [[e^{iψ} cos φ, e^{iχ} sin φ], [-e^{-iχ} sin φ, e^{-iψ} cos φ]]
/// with sin²φ uniform on [0,1] and α, ψ, χ uniform on [0, 2π).
ComplexMatrix haar_unitary(RandomStream& rng);

/// exp(-i s H) U for a random Hermitian direction H with unit operator norm;
/// a perturbation of size about s.
ComplexMatrix perturbed_unitary(const ComplexMatrix& u, double size,
                                RandomStream& rng);

}  // namespace qcivet
