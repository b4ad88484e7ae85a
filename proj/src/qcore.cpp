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

#include "qcivet/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qcivet/error.hpp"

namespace qcivet {

namespace {

void require_dim(std::size_t dim) {
  if (dim != 2 && dim != 4) {
    throw InvalidArgument("matrix dimension must be 2 or 4, got " +
                          std::to_string(dim));
  }
}

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw InvalidArgument(std::string(what) + ": dimension mismatch (" +
                          std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw InvalidArgument(std::string(what) + ": argument must be finite");
  }
}

double off_diagonal_norm(const ComplexMatrix& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) {
      if (i != j) s += std::norm(m(i, j));
    }
  }
  return std::sqrt(s);
}

// Cyclic Jacobi for Hermitian matrices. Each rotation first removes the phase
// of a_pq with a diagonal unitary, then applies the real symmetric rotation.
std::vector<double> jacobi_eigenvalues(ComplexMatrix a) {
  const std::size_t n = a.dim();
  const double scale = std::max(1.0, a.frobenius_norm());
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) < 1e-14 * scale) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex h = a(p, q);
        const double mag = std::abs(h);
        if (mag < 1e-300) continue;
        const Complex phase = h / mag;
        const double alpha = a(p, p).real();
        const double beta = a(q, q).real();
        const double tau = (beta - alpha) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // V = D J with D = diag(.., 1 @p, conj(phase) @q, ..) and
        // J = [[c, s], [-s, c]] on (p, q).
        ComplexMatrix v = ComplexMatrix::identity(n);
        v(p, p) = c;
        v(p, q) = s;
        v(q, p) = -s * std::conj(phase);
        v(q, q) = c * std::conj(phase);
        a = v.adjoint() * a * v;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a(i, i).real();
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim) { require_dim(dim); }

ComplexMatrix::ComplexMatrix(std::size_t dim,
                             std::initializer_list<Complex> entries)
    : ComplexMatrix(dim, std::span<const Complex>(entries.begin(),
                                                  entries.size())) {}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::span<const Complex> entries)
    : dim_(dim) {
  require_dim(dim);
  if (entries.size() != dim * dim) {
    throw InvalidArgument("ComplexMatrix: expected " +
                          std::to_string(dim * dim) + " entries, got " +
                          std::to_string(entries.size()));
  }
  std::copy(entries.begin(), entries.end(), data_.begin());
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
  }
  return out;
}

Complex ComplexMatrix::trace() const noexcept {
  Complex t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const noexcept {
  double s = 0.0;
  for (const Complex& z : entries()) s += std::norm(z);
  return std::sqrt(s);
}

bool ComplexMatrix::is_hermitian(double tol) const noexcept {
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = i; j < dim_; ++j) {
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
    }
  }
  return true;
}

bool ComplexMatrix::is_unitary(double tol) const {
  return (adjoint() * (*this)).approx_equal(identity(dim_), tol);
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  require_same_dim(dim_, rhs.dim_, "matrix addition");
  for (std::size_t k = 0; k < dim_ * dim_; ++k) data_[k] += rhs.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  require_same_dim(dim_, rhs.dim_, "matrix subtraction");
  for (std::size_t k = 0; k < dim_ * dim_; ++k) data_[k] -= rhs.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) noexcept {
  for (std::size_t k = 0; k < dim_ * dim_; ++k) data_[k] *= scale;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  require_same_dim(lhs.dim_, rhs.dim_, "matrix product");
  const std::size_t n = lhs.dim_;
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex a = lhs(i, k);
      for (std::size_t j = 0; j < n; ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

bool ComplexMatrix::approx_equal(const ComplexMatrix& other, double tol) const {
  if (dim_ != other.dim_) return false;
  for (std::size_t k = 0; k < dim_ * dim_; ++k) {
    if (std::abs(data_[k] - other.data_[k]) > tol) return false;
  }
  return true;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != 2 || b.dim() != 2) {
    throw InvalidArgument("kron: only 2x2 factors are supported");
  }
  ComplexMatrix out(4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l)
          out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return out;
}

bool equal_up_to_phase(const ComplexMatrix& u, const ComplexMatrix& v,
                       double tol) {
  if (u.dim() != v.dim()) return false;
  const double overlap = std::abs((u.adjoint() * v).trace());
  return std::abs(overlap - static_cast<double>(u.dim())) <= tol;
}

// ---------------------------------------------------------------------------
// Spectra and norms

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  if (!m.is_hermitian(1e-9)) {
    throw InvalidArgument("hermitian_eigenvalues: matrix is not Hermitian");
  }
  if (m.dim() == 2) {
    const double a = m(0, 0).real();
    const double d = m(1, 1).real();
    const double mean = 0.5 * (a + d);
    const double radius = std::hypot(0.5 * (a - d), std::abs(m(0, 1)));
    return {mean - radius, mean + radius};
  }
  return jacobi_eigenvalues(m);
}

std::vector<double> singular_values(const ComplexMatrix& m) {
  std::vector<double> sv;
  if (m.is_hermitian(1e-12)) {
    sv = hermitian_eigenvalues(m);
    for (double& x : sv) x = std::abs(x);
  } else {
    sv = hermitian_eigenvalues(m.adjoint() * m);
    for (double& x : sv) x = std::sqrt(std::max(0.0, x));
  }
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

double trace_norm(const ComplexMatrix& m) {
  double s = 0.0;
  for (double x : singular_values(m)) s += x;
  return s;
}

double operator_norm(const ComplexMatrix& m) { return singular_values(m).front(); }

// ---------------------------------------------------------------------------
// Gates

ComplexMatrix rx(double theta) {
  require_finite(theta, "rx");
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  return ComplexMatrix(2, {c, Complex(0, -s), Complex(0, -s), c});
}

ComplexMatrix ry(double theta) {
  require_finite(theta, "ry");
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  return ComplexMatrix(2, {c, -s, s, c});
}

ComplexMatrix rz(double theta) {
  require_finite(theta, "rz");
  return ComplexMatrix(2, {std::polar(1.0, -theta / 2), 0.0, 0.0,
                           std::polar(1.0, theta / 2)});
}

ComplexMatrix s_gate() { return ComplexMatrix(2, {1.0, 0.0, 0.0, Complex(0, 1)}); }

ComplexMatrix s_dagger() {
  return ComplexMatrix(2, {1.0, 0.0, 0.0, Complex(0, -1)});
}

ComplexMatrix h_gate() {
  const double r = std::numbers::sqrt2 / 2;
  return ComplexMatrix(2, {r, r, r, -r});
}

ComplexMatrix x_gate() { return ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0}); }

ComplexMatrix y_gate() {
  return ComplexMatrix(2, {0.0, Complex(0, -1), Complex(0, 1), 0.0});
}

ComplexMatrix z_gate() { return ComplexMatrix(2, {1.0, 0.0, 0.0, -1.0}); }

// ---------------------------------------------------------------------------
// States

PureState::PureState(std::vector<Complex> amplitudes)
    : amplitudes_(std::move(amplitudes)) {
  require_dim(amplitudes_.size());
  double n = 0.0;
  for (const Complex& a : amplitudes_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw InvalidArgument("PureState: non-finite amplitude");
    }
    n += std::norm(a);
  }
  if (std::abs(n - 1.0) > 1e-12) {
    throw InvalidArgument("PureState: amplitudes are not normalised");
  }
}

PureState PureState::normalized(std::vector<Complex> amplitudes) {
  double n = 0.0;
  for (const Complex& a : amplitudes) n += std::norm(a);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw InvalidArgument("PureState::normalized: zero or non-finite vector");
  }
  const double inv = 1.0 / std::sqrt(n);
  for (Complex& a : amplitudes) a *= inv;
  return PureState(std::move(amplitudes));
}

PureState PureState::plus() {
  const double r = std::numbers::sqrt2 / 2;
  return PureState({r, r});
}

PureState PureState::minus() {
  const double r = std::numbers::sqrt2 / 2;
  return PureState({r, -r});
}

PureState PureState::evolved(const ComplexMatrix& u) const {
  require_same_dim(u.dim(), dim(), "PureState::evolved");
  std::vector<Complex> out(dim(), 0.0);
  for (std::size_t i = 0; i < dim(); ++i) {
    for (std::size_t j = 0; j < dim(); ++j) out[i] += u(i, j) * amplitudes_[j];
  }
  return PureState::normalized(std::move(out));
}

ComplexMatrix PureState::projector() const {
  ComplexMatrix m(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    for (std::size_t j = 0; j < dim(); ++j) {
      m(i, j) = amplitudes_[i] * std::conj(amplitudes_[j]);
    }
  }
  return m;
}

DensityOperator::DensityOperator(const ComplexMatrix& m) : m_(m) { validate(); }

DensityOperator::DensityOperator(const PureState& psi)
    : m_(psi.projector()) {}

DensityOperator DensityOperator::maximally_mixed(std::size_t dim) {
  return DensityOperator(ComplexMatrix::identity(dim) *
                         Complex(1.0 / static_cast<double>(dim)));
}

DensityOperator DensityOperator::trusted(const ComplexMatrix& m) {
  return DensityOperator(m, TrustedTag{});
}

void DensityOperator::validate() const {
  if (!m_.is_hermitian(1e-12)) {
    throw InvalidArgument("DensityOperator: matrix is not Hermitian");
  }
  const Complex tr = m_.trace();
  if (std::abs(tr.real() - 1.0) > 1e-12 || std::abs(tr.imag()) > 1e-12) {
    throw InvalidArgument("DensityOperator: trace is not 1");
  }
  if (hermitian_eigenvalues(m_).front() < -1e-10) {
    throw InvalidArgument("DensityOperator: matrix is not positive semidefinite");
  }
}

DensityOperator partial_trace_first(const DensityOperator& rho_ab) {
  if (rho_ab.dim() != 4) {
    throw InvalidArgument("partial_trace_first: expected a 4x4 density operator");
  }
  const ComplexMatrix& m = rho_ab.matrix();
  ComplexMatrix out(2);
  for (std::size_t j = 0; j < 2; ++j) {
    for (std::size_t k = 0; k < 2; ++k) {
      out(j, k) = m(j, k) + m(2 + j, 2 + k);
    }
  }
  return DensityOperator::trusted(out);
}

// ---------------------------------------------------------------------------
// Observables

Observable::Observable(ComplexMatrix matrix, std::string label)
    : matrix_(matrix), label_(std::move(label)) {
  if (!matrix_.is_hermitian(1e-12)) {
    throw InvalidArgument("Observable '" + label_ + "' is not Hermitian");
  }
}

Observable Observable::pauli_x() { return Observable(x_gate(), "X"); }
Observable Observable::pauli_y() { return Observable(y_gate(), "Y"); }
Observable Observable::pauli_z() { return Observable(z_gate(), "Z"); }

double expectation(const Observable& obs, const DensityOperator& rho) {
  require_same_dim(obs.dim(), rho.dim(), "expectation");
  const Complex t = (obs.matrix() * rho.matrix()).trace();
  if (std::abs(t.imag()) >= 1e-10) {
    throw InvalidArgument("expectation: imaginary residue above 1e-10");
  }
  return t.real();
}

// ---------------------------------------------------------------------------
// Channels

Channel Channel::unitary(const ComplexMatrix& u) {
  if (!u.is_unitary(1e-10)) {
    throw InvalidArgument("Channel::unitary: matrix is not unitary");
  }
  Channel ch(Kind::kUnitary, u.dim());
  ch.unitary_ = u;
  return ch;
}

Channel Channel::depolarizing(double p, std::size_t dim) {
  require_dim(dim);
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidArgument("Channel::depolarizing: p must lie in [0, 1]");
  }
  Channel ch(Kind::kDepolarizing, dim);
  ch.p_ = p;
  return ch;
}

Channel Channel::compose(std::vector<Channel> parts) {
  if (parts.empty()) {
    throw InvalidArgument("Channel::compose: at least one part is required");
  }
  const std::size_t dim = parts.front().dim();
  for (const Channel& c : parts) require_same_dim(dim, c.dim(), "Channel::compose");
  Channel ch(Kind::kComposition, dim);
  ch.parts_ = std::move(parts);
  return ch;
}

Channel Channel::identity(std::size_t dim) {
  return unitary(ComplexMatrix::identity(dim));
}

const ComplexMatrix& Channel::unitary_matrix() const {
  if (kind_ != Kind::kUnitary) throw Unsupported("channel is not a unitary");
  return unitary_;
}

double Channel::probability() const {
  if (kind_ != Kind::kDepolarizing) throw Unsupported("channel is not depolarizing");
  return p_;
}

const std::vector<Channel>& Channel::parts() const {
  if (kind_ != Kind::kComposition) throw Unsupported("channel is not a composition");
  return parts_;
}

std::optional<ComplexMatrix> Channel::as_unitary() const {
  switch (kind_) {
    case Kind::kUnitary:
      return unitary_;
    case Kind::kDepolarizing:
      if (p_ == 0.0) return ComplexMatrix::identity(dim_);
      return std::nullopt;
    case Kind::kComposition: {
      ComplexMatrix acc = ComplexMatrix::identity(dim_);
      for (const Channel& part : parts_) {
        auto u = part.as_unitary();
        if (!u) return std::nullopt;
        acc = *u * acc;
      }
      return acc;
    }
  }
  return std::nullopt;
}

void Channel::flatten_into(std::vector<Channel>& out) const {
  if (kind_ == Kind::kComposition) {
    for (const Channel& part : parts_) part.flatten_into(out);
  } else {
    out.push_back(*this);
  }
}

std::vector<Channel> Channel::flattened() const {
  std::vector<Channel> out;
  flatten_into(out);
  return out;
}

DensityOperator Channel::apply(const DensityOperator& rho) const {
  require_same_dim(dim_, rho.dim(), "Channel::apply");
  switch (kind_) {
    case Kind::kUnitary:
      return DensityOperator::trusted(unitary_ * rho.matrix() * unitary_.adjoint());
    case Kind::kDepolarizing: {
      ComplexMatrix out = rho.matrix() * Complex(1.0 - p_);
      const double mix = p_ / static_cast<double>(dim_);
      for (std::size_t i = 0; i < dim_; ++i) out(i, i) += mix;
      return DensityOperator::trusted(out);
    }
    case Kind::kComposition: {
      DensityOperator cur = rho;
      for (const Channel& part : parts_) cur = part.apply(cur);
      return cur;
    }
  }
  return rho;
}

// ---------------------------------------------------------------------------
// Channel distances

double diamond_distance_unitary(const ComplexMatrix& u, const ComplexMatrix& v) {
  if (u.dim() != 2 || v.dim() != 2) {
    throw InvalidArgument("diamond_distance_unitary: 2x2 unitaries required");
  }
  if (!u.is_unitary(1e-10) || !v.is_unitary(1e-10)) {
    throw InvalidArgument("diamond_distance_unitary: input is not unitary");
  }
  // W = U†V = e^{ia}(cos(Δ/2) I - i sin(Δ/2) n·σ), so the traceless part of W
  // has Frobenius norm √2 sin(Δ/2). This avoids the cancellation of solving
  // the characteristic polynomial when the eigenphases nearly coincide.
  const ComplexMatrix w = u.adjoint() * v;
  ComplexMatrix traceless = w;
  const Complex half_trace = 0.5 * w.trace();
  traceless(0, 0) -= half_trace;
  traceless(1, 1) -= half_trace;
  const double sin_half = std::min(1.0, traceless.frobenius_norm() / std::numbers::sqrt2);
  return 2.0 * sin_half;
}

DensityOperator bloch_state(double x, double y, double z) {
  const double r2 = x * x + y * y + z * z;
  if (!(r2 <= 1.0 + 1e-12)) {
    throw InvalidArgument("bloch_state: Bloch vector longer than 1");
  }
  ComplexMatrix m(2, {0.5 * (1.0 + z), Complex(0.5 * x, -0.5 * y),
                      Complex(0.5 * x, 0.5 * y), 0.5 * (1.0 - z)});
  return DensityOperator::trusted(m);
}

double diamond_distance_lower_bound(const Channel& a, const Channel& b,
                                    std::size_t points) {
  if (a.dim() != 2 || b.dim() != 2) {
    throw InvalidArgument("diamond_distance_lower_bound: single-qubit channels only");
  }
  if (points == 0) return 0.0;
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  double best = 0.0;
  for (std::size_t k = 0; k < points; ++k) {
    const double z = points == 1 ? 1.0
                                 : 1.0 - 2.0 * static_cast<double>(k) /
                                             static_cast<double>(points - 1);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * static_cast<double>(k);
    const DensityOperator rho = bloch_state(r * std::cos(phi), r * std::sin(phi), z);
    const double d =
        trace_norm(a.apply(rho).matrix() - b.apply(rho).matrix());
    best = std::max(best, d);
  }
  return best;
}

}  // namespace qcivet
