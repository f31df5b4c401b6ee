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

#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "qunital/eigen.hpp"
#include "qunital/matrix.hpp"

namespace qunital {

/// A density matrix that has passed validation: Hermitian, positive
/// semidefinite and of unit trace, each within `tol()`.
class DensityMatrix {
public:
  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  std::size_t dim() const noexcept { return matrix_.rows(); }
  double tol() const noexcept { return tol_; }

  /// Spectrum computed at validation time (ascending).
  std::span<const double> eigenvalues() const noexcept { return eigenvalues_; }

private:
  DensityMatrix(ComplexMatrix m, double tol, std::vector<double> eigs)
      : matrix_(std::move(m)), tol_(tol), eigenvalues_(std::move(eigs)) {}

  friend DensityMatrix validate_density(const ComplexMatrix& m, double tol);

  ComplexMatrix matrix_;
  double tol_ = kValidationTol;
  std::vector<double> eigenvalues_;
};

/// Entropy in nats (k_B = 1).
struct EntropyValue {
  double nats = 0.0;

  double bits() const noexcept { return nats / std::numbers::ln2; }
};

/// Checks every density-matrix invariant and reports all violations at once.
inline DensityMatrix validate_density(const ComplexMatrix& m, double tol = kValidationTol) {
  detail::require_square(m, "validate_density");
  if (m.rows() == 0) throw ShapeError("validate_density: empty matrix");
  if (!m.all_finite()) throw ValidationError("validate_density: non-finite entry", {{"finite", INFINITY}});

  std::vector<ValidationError::Check> failed;
  const double herm = hermiticity_defect(m);
  if (herm > tol) failed.push_back({"hermitian", herm});

  const cplx tr = trace(m);
  const double trace_err = std::abs(tr - 1.0);
  if (trace_err > tol) failed.push_back({"unit_trace", tr.real() - 1.0});

  std::vector<double> eigs;
  if (herm <= tol) {
    eigs = hermitian_eigenvalues(m, tol);
    if (eigs.front() < -tol) failed.push_back({"positive_semidefinite", eigs.front()});
  }

  if (!failed.empty()) {
    std::string msg = "invalid density matrix:";
    for (const auto& c : failed) msg += " " + c.name + " violated (" + std::to_string(c.magnitude) + ")";
    throw ValidationError(msg, std::move(failed));
  }
  return DensityMatrix(m, tol, std::move(eigs));
}

/// -sum lambda ln lambda with 0 ln 0 = 0; eigenvalues in (-tol, 0] count as zero.
inline EntropyValue von_neumann_entropy(const DensityMatrix& rho) {
  double s = 0.0;
  for (double lambda : rho.eigenvalues())
    if (lambda > 0.0) s -= lambda * std::log(lambda);
  return {std::max(s, 0.0)};
}

inline double purity(const DensityMatrix& rho) {
  // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
  const double f = frobenius_norm(rho.matrix());
  return f * f;
}

/// |psi><psi|. With `normalize` false the amplitudes must already have unit norm.
inline DensityMatrix pure_state_density(std::span<const cplx> amplitudes, bool normalize = false,
                                        double tol = kValidationTol) {
  double norm2 = 0.0;
  for (const auto& z : amplitudes) norm2 += std::norm(z);
  if (amplitudes.empty() || norm2 == 0.0) throw ValidationError("pure_state_density: zero vector", {{"norm", 0.0}});
  const double norm = std::sqrt(norm2);
  std::vector<cplx> psi(amplitudes.begin(), amplitudes.end());
  if (normalize) {
    for (auto& z : psi) z /= norm;
  } else if (std::abs(norm - 1.0) > tol) {
    throw ValidationError("pure_state_density: amplitude vector has norm " + std::to_string(norm),
                          {{"unit_norm", norm - 1.0}});
  }
  return validate_density(outer(psi, psi), tol);
}

inline DensityMatrix pure_state_density(std::initializer_list<cplx> amplitudes, bool normalize = false) {
  return pure_state_density(std::span<const cplx>(amplitudes.begin(), amplitudes.size()), normalize);
}

/// Computational basis state |index><index|.
inline DensityMatrix basis_state(std::size_t d, std::size_t index) {
  return validate_density(ket_bra(d, index, index));
}

inline DensityMatrix maximally_mixed(std::size_t d) {
  if (d == 0) throw ShapeError("maximally_mixed: dimension must be positive");
  return validate_density((1.0 / static_cast<double>(d)) * ComplexMatrix::identity(d));
}

inline DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return validate_density(kron(a.matrix(), b.matrix()), std::max(a.tol(), b.tol()));
}

/// Reduced state of one factor of a validated composite state.
inline DensityMatrix reduced_state(const DensityMatrix& joint, DimensionSplit split, Subsystem kept) {
  const Subsystem traced = kept == Subsystem::System ? Subsystem::Reservoir : Subsystem::System;
  return validate_density(partial_trace(joint.matrix(), split, traced), joint.tol());
}

}  // namespace qunital
