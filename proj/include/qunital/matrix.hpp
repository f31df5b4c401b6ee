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
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qunital {

using cplx = std::complex<double>;

/// Default tolerance for validating inputs (hermiticity, trace, unitarity).
inline constexpr double kValidationTol = 1e-10;
/// Default tolerance for equality verdicts.
inline constexpr double kVerdictTol = 1e-9;

/// Thrown when operand dimensions are incompatible.
class ShapeError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a value fails a domain check (hermiticity, positivity, ...).
/// `checks()` lists every violated invariant with its magnitude.
class ValidationError : public std::invalid_argument {
public:
  struct Check {
    std::string name;
    double magnitude;
  };

  ValidationError(const std::string& what, std::vector<Check> checks = {})
      : std::invalid_argument(what), checks_(std::move(checks)) {}

  const std::vector<Check>& checks() const noexcept { return checks_; }

private:
  std::vector<Check> checks_;
};

/// Dense complex matrix, row-major.
class ComplexMatrix {
public:
  ComplexMatrix() = default;

  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
      throw ShapeError("ComplexMatrix: " + std::to_string(data_.size()) +
                       " entries for a " + std::to_string(rows_) + "x" +
                       std::to_string(cols_) + " matrix");
    if (!all_finite())
      throw ValidationError("ComplexMatrix: non-finite entry");
  }

  /// Row-by-row literal, e.g. `ComplexMatrix::from_rows({{0, 1}, {1, 0}})`.
  static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r ? rows.begin()->size() : 0;
    std::vector<cplx> data;
    data.reserve(r * c);
    for (const auto& row : rows) {
      if (row.size() != c) throw ShapeError("from_rows: ragged rows");
      data.insert(data.end(), row.begin(), row.end());
    }
    return ComplexMatrix(r, c, std::move(data));
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(std::span<const cplx> diag) {
    ComplexMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
  }

  static ComplexMatrix diagonal(std::initializer_list<cplx> diag) {
    return diagonal(std::span<const cplx>(diag.begin(), diag.size()));
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const cplx> entries() const noexcept { return data_; }

  bool all_finite() const noexcept {
    for (const auto& z : data_)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
  }

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

/// Factorization of a composite space as system (x) reservoir. Composite basis
/// index is system-major: k = i_S * d_R + i_R.
struct DimensionSplit {
  std::size_t dim_system = 1;
  std::size_t dim_reservoir = 1;

  constexpr std::size_t composite() const noexcept { return dim_system * dim_reservoir; }
  constexpr std::size_t index(std::size_t i_sys, std::size_t i_res) const noexcept {
    return i_sys * dim_reservoir + i_res;
  }
  constexpr DimensionSplit swapped() const noexcept { return {dim_reservoir, dim_system}; }

  friend bool operator==(const DimensionSplit&, const DimensionSplit&) = default;
};

enum class Subsystem { System, Reservoir };

namespace detail {

inline std::string shape_str(const ComplexMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

inline void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeError(std::string(op) + ": shape mismatch " + shape_str(a) + " vs " + shape_str(b));
}

inline void require_square(const ComplexMatrix& a, const char* op) {
  if (!a.is_square()) throw ShapeError(std::string(op) + ": expected square matrix, got " + shape_str(a));
}

}  // namespace detail

inline ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows())
    throw ShapeError("matmul: " + detail::shape_str(a) + " * " + detail::shape_str(b));
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return matmul(a, b); }

inline ComplexMatrix operator*(cplx s, const ComplexMatrix& a) {
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = s * a(i, j);
  return out;
}

inline ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  detail::require_same_shape(a, b, "operator+");
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) + b(i, j);
  return out;
}

inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  detail::require_same_shape(a, b, "operator-");
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - b(i, j);
  return out;
}

/// Conjugate transpose.
inline ComplexMatrix dagger(const ComplexMatrix& a) {
  ComplexMatrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
  return out;
}

/// Kronecker product a (x) b; `a` indexes the major (system) factor.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

inline cplx trace(const ComplexMatrix& a) {
  detail::require_square(a, "trace");
  cplx t{};
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

/// Traces out the `traced` factor of `m`, returning the operator on the other one.
inline ComplexMatrix partial_trace(const ComplexMatrix& m, DimensionSplit split, Subsystem traced) {
  detail::require_square(m, "partial_trace");
  if (split.dim_system == 0 || split.dim_reservoir == 0 || m.rows() != split.composite())
    throw ShapeError("partial_trace: dimension " + std::to_string(m.rows()) + " does not factor as " +
                     std::to_string(split.dim_system) + "x" + std::to_string(split.dim_reservoir));
  const std::size_t ds = split.dim_system;
  const std::size_t dr = split.dim_reservoir;
  if (traced == Subsystem::Reservoir) {
    ComplexMatrix out(ds, ds);
    for (std::size_t i = 0; i < ds; ++i)
      for (std::size_t j = 0; j < ds; ++j)
        for (std::size_t r = 0; r < dr; ++r) out(i, j) += m(split.index(i, r), split.index(j, r));
    return out;
  }
  ComplexMatrix out(dr, dr);
  for (std::size_t r = 0; r < dr; ++r)
    for (std::size_t q = 0; q < dr; ++q)
      for (std::size_t s = 0; s < ds; ++s) out(r, q) += m(split.index(s, r), split.index(s, q));
  return out;
}

inline double frobenius_norm(const ComplexMatrix& a) {
  double acc = 0.0;
  for (const auto& z : a.entries()) acc += std::norm(z);
  return std::sqrt(acc);
}

inline double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  detail::require_same_shape(a, b, "frobenius_distance");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) acc += std::norm(a(i, j) - b(i, j));
  return std::sqrt(acc);
}

/// Largest entry of |a - a^dagger|.
inline double hermiticity_defect(const ComplexMatrix& a) {
  detail::require_square(a, "hermiticity_defect");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j) worst = std::max(worst, std::abs(a(i, j) - std::conj(a(j, i))));
  return worst;
}

inline double unitarity_defect(const ComplexMatrix& u) {
  detail::require_square(u, "is_unitary");
  return frobenius_distance(dagger(u) * u, ComplexMatrix::identity(u.rows()));
}

inline bool is_unitary(const ComplexMatrix& u, double tol = kVerdictTol) {
  return unitarity_defect(u) <= tol;
}

/// u * m * u^dagger
inline ComplexMatrix conjugate(const ComplexMatrix& u, const ComplexMatrix& m) {
  return u * m * dagger(u);
}

/// Computational-basis operator |row><col| of dimension d.
inline ComplexMatrix ket_bra(std::size_t d, std::size_t row, std::size_t col) {
  if (row >= d || col >= d) throw ShapeError("ket_bra: basis index out of range");
  ComplexMatrix m(d, d);
  m(row, col) = 1.0;
  return m;
}

/// |psi><phi|
inline ComplexMatrix outer(std::span<const cplx> psi, std::span<const cplx> phi) {
  ComplexMatrix m(psi.size(), phi.size());
  for (std::size_t i = 0; i < psi.size(); ++i)
    for (std::size_t j = 0; j < phi.size(); ++j) m(i, j) = psi[i] * std::conj(phi[j]);
  return m;
}

}  // namespace qunital
