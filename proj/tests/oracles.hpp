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


// Independent reference computations used only by the tests. Everything here
// works on raw index arithmetic and never calls into the library's kernels.

#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "qunital/matrix.hpp"
#include "qunital/random.hpp"

namespace qunital::oracle {

inline ComplexMatrix triple_loop_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      cplx acc{};
      for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
      out(i, j) = acc;
    }
  return out;
}

inline ComplexMatrix entrywise_adjoint(const ComplexMatrix& a) {
  ComplexMatrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = cplx(a(i, j).real(), -a(i, j).imag());
  return out;
}

/// Tr over the first factor of a (dA*dB)-dimensional operator, by index sums.
inline ComplexMatrix trace_first(const ComplexMatrix& m, std::size_t da, std::size_t db) {
  ComplexMatrix out(db, db);
  for (std::size_t r = 0; r < db; ++r)
    for (std::size_t q = 0; q < db; ++q)
      for (std::size_t s = 0; s < da; ++s) out(r, q) += m(s * db + r, s * db + q);
  return out;
}

/// Tr over the second factor.
inline ComplexMatrix trace_second(const ComplexMatrix& m, std::size_t da, std::size_t db) {
  ComplexMatrix out(da, da);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j)
      for (std::size_t r = 0; r < db; ++r) out(i, j) += m(i * db + r, j * db + r);
  return out;
}

/// Tr_R[U (rho (x) env) U^dagger], written as one explicit index sum:
/// out_{jj'} = sum_{m, i, r, i', r'} U_{(j,m),(i,r)} rho_{ii'} env_{rr'} conj(U_{(j',m),(i',r')}).
inline ComplexMatrix reduced_dynamics(const ComplexMatrix& u, const ComplexMatrix& rho, const ComplexMatrix& env) {
  const std::size_t ds = rho.rows();
  const std::size_t dr = env.rows();
  auto idx = [dr](std::size_t s, std::size_t r) { return s * dr + r; };
  ComplexMatrix out(ds, ds);
  for (std::size_t j = 0; j < ds; ++j)
    for (std::size_t jp = 0; jp < ds; ++jp) {
      cplx acc{};
      for (std::size_t m = 0; m < dr; ++m)
        for (std::size_t i = 0; i < ds; ++i)
          for (std::size_t r = 0; r < dr; ++r)
            for (std::size_t ip = 0; ip < ds; ++ip)
              for (std::size_t rp = 0; rp < dr; ++rp)
                acc += u(idx(j, m), idx(i, r)) * rho(i, ip) * env(r, rp) * std::conj(u(idx(jp, m), idx(ip, rp)));
      out(j, jp) = acc;
    }
  return out;
}

/// -sum p ln p over a probability vector.
inline double shannon_nats(const std::vector<double>& p) {
  double s = 0.0;
  for (double x : p)
    if (x > 0.0) s -= x * std::log(x);
  return s;
}

inline ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng) { return ginibre(rows, cols, rng); }

inline ComplexMatrix random_hermitian(std::size_t n, Rng& rng) {
  const ComplexMatrix g = ginibre(n, n, rng);
  ComplexMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h(i, j) = 0.5 * (g(i, j) + std::conj(g(j, i)));
  return h;
}

}  // namespace qunital::oracle
