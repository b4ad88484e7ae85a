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

// Shared helpers for the test suites. Random draws here use std::mt19937_64
// on purpose so the test oracles do not share a generator with the library.

#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "qcivet/qcore.hpp"

namespace qcivet::testing {

inline ComplexMatrix pauli(int k) {
  switch (k) {
    case 0: return x_gate();
    case 1: return y_gate();
    default: return z_gate();
  }
}

/// Mixed single-qubit state with Bloch vector uniform in the unit ball.
inline DensityOperator random_density(std::mt19937_64& g) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double x, y, z;
  do {
    x = u(g), y = u(g), z = u(g);
  } while (x * x + y * y + z * z > 1.0);
  return DensityOperator(ComplexMatrix(2, {0.5 * (1 + z), 0.5 * Complex(x, -y),
                                           0.5 * Complex(x, y), 0.5 * (1 - z)}));
}

inline ComplexMatrix random_hermitian(std::mt19937_64& g, std::size_t dim = 2) {
  std::normal_distribution<double> n;
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    m(i, i) = n(g);
    for (std::size_t j = i + 1; j < dim; ++j) {
      m(i, j) = Complex(n(g), n(g));
      m(j, i) = std::conj(m(i, j));
    }
  }
  return m;
}

/// Random SU(2) element from a uniformly random unit quaternion.
inline ComplexMatrix random_unitary(std::mt19937_64& g) {
  std::normal_distribution<double> n;
  double q[4];
  double norm = 0.0;
  for (double& v : q) {
    v = n(g);
    norm += v * v;
  }
  norm = std::sqrt(norm);
  for (double& v : q) v /= norm;
  return ComplexMatrix(2, {Complex(q[0], q[1]), Complex(q[2], q[3]),
                           Complex(-q[2], q[3]), Complex(q[0], -q[1])});
}

inline double max_entry_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) d = std::max(d, std::abs(a(i, j) - b(i, j)));
  }
  return d;
}

}  // namespace qcivet::testing
