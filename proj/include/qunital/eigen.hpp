// Copyright 2026 The qunital Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "qunital/matrix.hpp"

namespace qunital {

struct HermitianEigen {
  /// Ascending.
  std::vector<double> values;
  /// Column k is the eigenvector for values[k].
  ComplexMatrix vectors;
};

namespace detail {

inline double off_diagonal_norm(const ComplexMatrix& a) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) acc += std::norm(a(i, j));
  return std::sqrt(acc);
}

}  // namespace detail

/// Cyclic Jacobi diagonalization of a Hermitian matrix using complex plane
/// rotations. Each rotation first removes the phase of the pivot a_pq and then
/// applies the classical real rotation, so the working matrix stays Hermitian.
///
/// Throws ValidationError if max|h - h^dagger| exceeds `herm_tol`.
inline HermitianEigen hermitian_eigen(const ComplexMatrix& h, double herm_tol = kValidationTol) {
  detail::require_square(h, "hermitian_eigen");
  const double defect = hermiticity_defect(h);
  if (defect > herm_tol)
    throw ValidationError("hermitian_eigen: matrix is not Hermitian (defect " + std::to_string(defect) + ")",
                          {{"hermitian", defect}});

  const std::size_t n = h.rows();
  // Symmetrize so round-off in the input does not leak into the rotations.
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = h(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));
      a(j, i) = std::conj(a(i, j));
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double scale = std::max(frobenius_norm(a), 1e-300);
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (detail::off_diagonal_norm(a) <= 1e-15 * scale) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag <= 1e-300) continue;
        const cplx phase = a(p, q) / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double zeta = (aqq - app) / (2.0 * mag);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // Q = diag(1, conj(phase)) * [[c, s], [-s, c]] on the (p, q) plane.
        const cplx qpp = c;
        const cplx qpq = s;
        const cplx qqp = -s * std::conj(phase);
        const cplx qqq = c * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {  // a <- a Q
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = akp * qpp + akq * qqp;
          a(k, q) = akp * qpq + akq * qqq;
        }
        for (std::size_t k = 0; k < n; ++k) {  // a <- Q^dagger a
          const cplx apk = a(p, k);
          const cplx aqk = a(q, k);
          a(p, k) = std::conj(qpp) * apk + std::conj(qqp) * aqk;
          a(q, k) = std::conj(qpq) * apk + std::conj(qqq) * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {  // v <- v Q
          const cplx vkp = v(k, p);
          const cplx vkq = v(k, q);
          v(k, p) = vkp * qpp + vkq * qqp;
          v(k, q) = vkp * qpq + vkq * qqq;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

  HermitianEigen out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h, double herm_tol = kValidationTol) {
  return hermitian_eigen(h, herm_tol).values;
}

}  // namespace qunital
