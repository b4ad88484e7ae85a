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

// Fixed-size complex linear algebra and quantum primitives for one- and
// two-qubit systems: states, gates, channels, observables, Schatten norms,
// partial trace and the closed-form unitary diamond distance.
//
// Everything here is a value type; operations are pure and thread-safe.

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qcivet {

using Complex = std::complex<double>;

/// Square complex matrix of dimension 2 or 4, stored row-major.
class ComplexMatrix {
 public:
  static constexpr std::size_t kMaxDim = 4;

  explicit ComplexMatrix(std::size_t dim = 2);
  /// Row-major entries; the list length must be dim*dim.
  ComplexMatrix(std::size_t dim, std::initializer_list<Complex> entries);
  ComplexMatrix(std::size_t dim, std::span<const Complex> entries);

  static ComplexMatrix identity(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  std::span<const Complex> entries() const noexcept {
    return {data_.data(), dim_ * dim_};
  }

  Complex& operator()(std::size_t row, std::size_t col) noexcept {
    return data_[row * dim_ + col];
  }
  const Complex& operator()(std::size_t row, std::size_t col) const noexcept {
    return data_[row * dim_ + col];
  }

  ComplexMatrix adjoint() const;
  Complex trace() const noexcept;
  /// Frobenius norm.
  double frobenius_norm() const noexcept;

  bool is_hermitian(double tol = 1e-12) const noexcept;
  bool is_unitary(double tol = 1e-10) const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex scale) noexcept;

  friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) {
    return lhs += rhs;
  }
  friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) {
    return lhs -= rhs;
  }
  friend ComplexMatrix operator*(ComplexMatrix m, Complex s) { return m *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix m) { return m *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& lhs,
                                 const ComplexMatrix& rhs);

  /// Entrywise equality within `tol`.
  bool approx_equal(const ComplexMatrix& other, double tol = 1e-12) const;

 private:
  std::size_t dim_;
  std::array<Complex, kMaxDim * kMaxDim> data_{};
};

/// Kronecker product of two 2x2 matrices.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// True when U and V differ only by a global phase: |Tr(U†V)| = dim.
bool equal_up_to_phase(const ComplexMatrix& u, const ComplexMatrix& v,
                       double tol = 1e-10);

// ---------------------------------------------------------------------------
// Spectra and norms

/// Eigenvalues of a Hermitian matrix, ascending. Closed form for dim 2,
/// cyclic Jacobi (off-diagonal norm < 1e-14) for dim 4.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

/// Singular values, descending.
std::vector<double> singular_values(const ComplexMatrix& m);

/// Schatten 1-norm: sum of singular values.
double trace_norm(const ComplexMatrix& m);

/// Schatten infinity-norm: largest singular value.
double operator_norm(const ComplexMatrix& m);

// ---------------------------------------------------------------------------
// Gates

ComplexMatrix rx(double theta);
ComplexMatrix ry(double theta);
ComplexMatrix rz(double theta);
ComplexMatrix s_gate();
ComplexMatrix s_dagger();
ComplexMatrix h_gate();
ComplexMatrix x_gate();
ComplexMatrix y_gate();
ComplexMatrix z_gate();

// ---------------------------------------------------------------------------
// States

class PureState {
 public:
  /// Throws InvalidArgument unless dim is 2 or 4 and the norm is 1 to 1e-12.
  explicit PureState(std::vector<Complex> amplitudes);

  /// Normalises before construction; throws on a zero vector.
  static PureState normalized(std::vector<Complex> amplitudes);

  static PureState zero() { return PureState({1.0, 0.0}); }
  static PureState one() { return PureState({0.0, 1.0}); }
  static PureState plus();
  static PureState minus();

  std::size_t dim() const noexcept { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }

  PureState evolved(const ComplexMatrix& u) const;
  /// |psi><psi|
  ComplexMatrix projector() const;

 private:
  std::vector<Complex> amplitudes_;
};

class DensityOperator {
 public:
  /// Validates Hermiticity (1e-12), unit trace (1e-12) and positivity
  /// (eigenvalues >= -1e-10). Throws InvalidArgument otherwise.
  explicit DensityOperator(const ComplexMatrix& m);
  DensityOperator(const PureState& psi);  // NOLINT: implicit by intent

  static DensityOperator maximally_mixed(std::size_t dim);

  /// Builds without validation. Only for outputs of maps already known to be
  /// CPTP (channel application, partial trace); validate() re-checks.
  static DensityOperator trusted(const ComplexMatrix& m);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  std::size_t dim() const noexcept { return m_.dim(); }

  /// Throws InvalidArgument if the invariants no longer hold.
  void validate() const;

 private:
  struct TrustedTag {};
  DensityOperator(const ComplexMatrix& m, TrustedTag) : m_(m) {}
  ComplexMatrix m_;
};

DensityOperator partial_trace_first(const DensityOperator& rho_ab);

// ---------------------------------------------------------------------------
// Observables

class Observable {
 public:
  /// Throws InvalidArgument unless the matrix is Hermitian to 1e-12.
  Observable(ComplexMatrix matrix, std::string label);

  static Observable pauli_x();
  static Observable pauli_y();
  static Observable pauli_z();

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  const std::string& label() const noexcept { return label_; }
  std::size_t dim() const noexcept { return matrix_.dim(); }

 private:
  ComplexMatrix matrix_;
  std::string label_;
};

/// Tr(O rho). The imaginary residue must be below 1e-10.
double expectation(const Observable& obs, const DensityOperator& rho);

// ---------------------------------------------------------------------------
// Channels

/// A CPTP map: unitary conjugation, depolarizing, or an ordered composition.
class Channel {
 public:
  enum class Kind { kUnitary, kDepolarizing, kComposition };

  /// rho -> U rho U†. Throws unless U†U = I to 1e-10.
  static Channel unitary(const ComplexMatrix& u);
  /// rho -> (1-p) rho + p I/d.
  static Channel depolarizing(double p, std::size_t dim = 2);
  /// Applies `parts` first to last. Parts must share a dimension.
  static Channel compose(std::vector<Channel> parts);
  static Channel identity(std::size_t dim = 2);

  Kind kind() const noexcept { return kind_; }
  std::size_t dim() const noexcept { return dim_; }
  /// Valid for kUnitary only.
  const ComplexMatrix& unitary_matrix() const;
  /// Valid for kDepolarizing only.
  double probability() const;
  /// Valid for kComposition only.
  const std::vector<Channel>& parts() const;

  /// The single unitary implementing this channel when every constituent is
  /// unitary (compositions are multiplied out), nullopt otherwise.
  std::optional<ComplexMatrix> as_unitary() const;

  /// Elementary (non-composition) constituents in application order.
  std::vector<Channel> flattened() const;

  DensityOperator apply(const DensityOperator& rho) const;

 private:
  Channel(Kind kind, std::size_t dim) : kind_(kind), dim_(dim) {}
  void flatten_into(std::vector<Channel>& out) const;

  Kind kind_;
  std::size_t dim_;
  ComplexMatrix unitary_{};
  double p_ = 0.0;
  std::vector<Channel> parts_;
};

// ---------------------------------------------------------------------------
// Channel distances

/// Exact diamond distance between the conjugation channels of two 2x2
/// unitaries: 2 sin(Δ/2), Δ the eigenphase arc of U†V wrapped to [0, π].
/// Throws InvalidArgument on non-unitary or non-2x2 input.
double diamond_distance_unitary(const ComplexMatrix& u, const ComplexMatrix& v);

/// Approximate lower bound on the diamond distance of two single-qubit
/// channels: max of ||A(rho) - B(rho)||_1 over `points` pure states on a
/// Fibonacci grid of the Bloch sphere (no ancilla). Exact in the limit for
/// unitary pairs; a lower bound in general.
double diamond_distance_lower_bound(const Channel& a, const Channel& b,
                                    std::size_t points = 10000);

/// Pure state with Bloch vector (x, y, z), |r| = 1.
DensityOperator bloch_state(double x, double y, double z);

}  // namespace qcivet
