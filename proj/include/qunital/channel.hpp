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

// Quantum channels obtained from a unitary dilation U on system (x) reservoir,
// and two independent ways of computing the unitality defect Phi(1) - 1:
//
//   Direct:      Phi(1) = Tr_R[ U (1 (x) pi) U^dagger ]
//   Commutator:  [Phi(1) - 1]_{jj'} = sum_i < [B_{j'i}^dagger, B_{ji}] >_pi
//
// where B_{ji} = <j|U|i> is the d_R x d_R reservoir block for the system
// transition i -> j (scattering amplitude absorbed into the block) and <.>_pi
// is the expectation tr(pi X) in the initial reservoir state. The two agree
// exactly when U is unitary; they are kept as separate code paths so that
// each checks the other.

#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qunital/eigen.hpp"
#include "qunital/matrix.hpp"
#include "qunital/state.hpp"

namespace qunital {

/// Operators below this Frobenius norm are dropped from Kraus sets, and
/// reservoir eigenvalues below it are ignored.
inline constexpr double kKrausPruneTol = 1e-12;

/// Permutes a composite operator from (A (x) B) ordering to (B (x) A).
/// `split` describes the input ordering.
inline ComplexMatrix swap_factors(const ComplexMatrix& m, DimensionSplit split) {
  detail::require_square(m, "swap_factors");
  if (m.rows() != split.composite()) throw ShapeError("swap_factors: dimension does not match split");
  const DimensionSplit out_split = split.swapped();
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t s = 0; s < split.dim_system; ++s)
    for (std::size_t r = 0; r < split.dim_reservoir; ++r)
      for (std::size_t s2 = 0; s2 < split.dim_system; ++s2)
        for (std::size_t r2 = 0; r2 < split.dim_reservoir; ++r2)
          out(out_split.index(r, s), out_split.index(r2, s2)) = m(split.index(s, r), split.index(s2, r2));
  return out;
}

/// Unitary on system (x) reservoir with its dimension split recorded.
class BipartiteUnitary {
public:
  /// Throws ShapeError on dimension mismatch and ValidationError with a
  /// "unitarity violation" message when U^dagger U is not I within `tol`.
  static BipartiteUnitary make(ComplexMatrix u, DimensionSplit split, double tol = kVerdictTol) {
    detail::require_square(u, "BipartiteUnitary");
    if (split.dim_system == 0 || split.dim_reservoir == 0 || u.rows() != split.composite())
      throw ShapeError("BipartiteUnitary: matrix dimension " + std::to_string(u.rows()) + " does not match split " +
                       std::to_string(split.dim_system) + "x" + std::to_string(split.dim_reservoir));
    if (!u.all_finite()) throw ValidationError("BipartiteUnitary: non-finite entry");
    const double defect = unitarity_defect(u);
    if (defect > tol)
      throw ValidationError("unitarity violation: ||U^dagger U - I||_F = " + std::to_string(defect),
                            {{"unitary", defect}});
    return BipartiteUnitary(std::move(u), split, tol);
  }

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  DimensionSplit split() const noexcept { return split_; }
  double tol() const noexcept { return tol_; }

  /// The same operator with the roles of system and reservoir exchanged.
  BipartiteUnitary swap_roles() const {
    return BipartiteUnitary(swap_factors(matrix_, split_), split_.swapped(), tol_);
  }

  /// Evolves a composite state.
  DensityMatrix evolve(const DensityMatrix& joint) const {
    if (joint.dim() != split_.composite()) throw ShapeError("BipartiteUnitary::evolve: dimension mismatch");
    return validate_density(conjugate(matrix_, joint.matrix()), joint.tol());
  }

private:
  BipartiteUnitary(ComplexMatrix u, DimensionSplit split, double tol)
      : matrix_(std::move(u)), split_(split), tol_(tol) {}

  ComplexMatrix matrix_;
  DimensionSplit split_;
  double tol_ = kVerdictTol;
};

inline BipartiteUnitary operator*(const BipartiteUnitary& a, const BipartiteUnitary& b) {
  if (a.split() != b.split()) throw ShapeError("BipartiteUnitary product: split mismatch");
  return BipartiteUnitary::make(a.matrix() * b.matrix(), a.split(), std::max(a.tol(), b.tol()));
}

/// Reservoir blocks B_{ji} = <j|U|i> of a composite operator, one for every
/// ordered pair of system basis states.
class BlockDecomposition {
public:
  /// Decomposes any composite matrix; no unitarity requirement.
  static BlockDecomposition from_matrix(const ComplexMatrix& u, DimensionSplit split) {
    detail::require_square(u, "block_decompose");
    if (u.rows() != split.composite()) throw ShapeError("block_decompose: dimension does not match split");
    const std::size_t ds = split.dim_system;
    const std::size_t dr = split.dim_reservoir;
    std::vector<ComplexMatrix> blocks;
    blocks.reserve(ds * ds);
    for (std::size_t j = 0; j < ds; ++j)
      for (std::size_t i = 0; i < ds; ++i) {
        ComplexMatrix b(dr, dr);
        for (std::size_t r = 0; r < dr; ++r)
          for (std::size_t q = 0; q < dr; ++q) b(r, q) = u(split.index(j, r), split.index(i, q));
        blocks.push_back(std::move(b));
      }
    return BlockDecomposition(split, std::move(blocks));
  }

  /// Builds blocks s_{ji} * F_{ji} from separate scattering amplitudes and
  /// reservoir operators; `family[j * d_S + i]` is F_{ji}.
  static BlockDecomposition from_scattering(const ComplexMatrix& amplitudes, const std::vector<ComplexMatrix>& family) {
    detail::require_square(amplitudes, "from_scattering");
    const std::size_t ds = amplitudes.rows();
    if (family.size() != ds * ds) throw ShapeError("from_scattering: expected d_S^2 reservoir operators");
    const std::size_t dr = family.front().rows();
    std::vector<ComplexMatrix> blocks;
    blocks.reserve(family.size());
    for (std::size_t j = 0; j < ds; ++j)
      for (std::size_t i = 0; i < ds; ++i) {
        const auto& f = family[j * ds + i];
        if (f.rows() != dr || f.cols() != dr) throw ShapeError("from_scattering: reservoir operators differ in shape");
        blocks.push_back(amplitudes(j, i) * f);
      }
    return BlockDecomposition({ds, dr}, std::move(blocks));
  }

  DimensionSplit split() const noexcept { return split_; }

  /// Block for the transition i -> j.
  const ComplexMatrix& block(std::size_t j, std::size_t i) const { return blocks_.at(j * split_.dim_system + i); }

  std::size_t size() const noexcept { return blocks_.size(); }

  ComplexMatrix reassemble() const {
    ComplexMatrix u(split_.composite(), split_.composite());
    for (std::size_t j = 0; j < split_.dim_system; ++j)
      for (std::size_t i = 0; i < split_.dim_system; ++i) {
        const auto& b = block(j, i);
        for (std::size_t r = 0; r < split_.dim_reservoir; ++r)
          for (std::size_t q = 0; q < split_.dim_reservoir; ++q) u(split_.index(j, r), split_.index(i, q)) = b(r, q);
      }
    return u;
  }

private:
  BlockDecomposition(DimensionSplit split, std::vector<ComplexMatrix> blocks)
      : split_(split), blocks_(std::move(blocks)) {}

  DimensionSplit split_;
  std::vector<ComplexMatrix> blocks_;
};

inline BlockDecomposition block_decompose(const BipartiteUnitary& u) {
  return BlockDecomposition::from_matrix(u.matrix(), u.split());
}

/// Completely positive trace-preserving map in Kraus form.
class KrausChannel {
public:
  /// Throws ValidationError when sum K^dagger K differs from I by more than `tp_tol`.
  static KrausChannel make(std::vector<ComplexMatrix> operators, double tp_tol = kValidationTol) {
    if (operators.empty()) throw ValidationError("KrausChannel: empty operator list");
    const std::size_t d = operators.front().rows();
    for (const auto& k : operators)
      if (k.rows() != d || k.cols() != d) throw ShapeError("KrausChannel: operators must all be d x d");
    KrausChannel ch(d, std::move(operators), tp_tol);
    const double defect = ch.trace_preservation_defect();
    if (defect > tp_tol)
      throw ValidationError("KrausChannel: not trace preserving (||sum K^dagger K - I||_F = " +
                                std::to_string(defect) + ")",
                            {{"trace_preserving", defect}});
    return ch;
  }

  static KrausChannel identity(std::size_t d) { return make({ComplexMatrix::identity(d)}); }

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<ComplexMatrix>& operators() const noexcept { return operators_; }
  double tp_tol() const noexcept { return tp_tol_; }

  double trace_preservation_defect() const {
    ComplexMatrix acc(dim_, dim_);
    for (const auto& k : operators_) acc = acc + dagger(k) * k;
    return frobenius_distance(acc, ComplexMatrix::identity(dim_));
  }

  /// sum K K^dagger, i.e. the image of the identity.
  ComplexMatrix unit_image() const {
    ComplexMatrix acc(dim_, dim_);
    for (const auto& k : operators_) acc = acc + k * dagger(k);
    return acc;
  }

private:
  KrausChannel(std::size_t d, std::vector<ComplexMatrix> ops, double tol)
      : dim_(d), operators_(std::move(ops)), tp_tol_(tol) {}

  std::size_t dim_ = 0;
  std::vector<ComplexMatrix> operators_;
  double tp_tol_ = kValidationTol;
};

/// Channel rho -> Tr_R[U (rho (x) env) U^dagger] in Kraus form. With
/// env = sum_k p_k |e_k><e_k|, the operators are
/// <j|K_{m,k}|i> = sqrt(p_k) <j,m|U|i,e_k> for every reservoir output m.
inline KrausChannel kraus_from_dilation(const BipartiteUnitary& u, const DensityMatrix& env) {
  const DimensionSplit split = u.split();
  if (env.dim() != split.dim_reservoir)
    throw ShapeError("kraus_from_dilation: environment dimension " + std::to_string(env.dim()) +
                     " != reservoir dimension " + std::to_string(split.dim_reservoir));
  const auto eig = hermitian_eigen(env.matrix(), env.tol());

  // Renormalize the kept spectrum so that pruning and round-off in the
  // environment's trace do not break trace preservation.
  double kept_mass = 0.0;
  for (double p : eig.values)
    if (p >= kKrausPruneTol) kept_mass += p;

  const auto& U = u.matrix();
  const std::size_t ds = split.dim_system;
  const std::size_t dr = split.dim_reservoir;
  std::vector<ComplexMatrix> ops;
  for (std::size_t k = 0; k < dr; ++k) {
    const double p = eig.values[k];
    if (p < kKrausPruneTol) continue;
    const double amp = std::sqrt(p / kept_mass);
    for (std::size_t m = 0; m < dr; ++m) {
      ComplexMatrix op(ds, ds);
      for (std::size_t j = 0; j < ds; ++j)
        for (std::size_t i = 0; i < ds; ++i) {
          cplx acc{};
          for (std::size_t r = 0; r < dr; ++r) acc += U(split.index(j, m), split.index(i, r)) * eig.vectors(r, k);
          op(j, i) = amp * acc;
        }
      if (frobenius_norm(op) >= kKrausPruneTol) ops.push_back(std::move(op));
    }
  }
  return KrausChannel::make(std::move(ops));
}

inline DensityMatrix apply_channel(const KrausChannel& phi, const DensityMatrix& rho) {
  if (phi.dim() != rho.dim())
    throw ShapeError("apply_channel: channel dimension " + std::to_string(phi.dim()) + " != state dimension " +
                     std::to_string(rho.dim()));
  ComplexMatrix out(rho.dim(), rho.dim());
  for (const auto& k : phi.operators()) out = out + conjugate(k, rho.matrix());
  return validate_density(out, rho.tol());
}

/// S(Phi(rho)) - S(rho) in nats.
inline double entropy_delta(const KrausChannel& phi, const DensityMatrix& rho) {
  return von_neumann_entropy(apply_channel(phi, rho)).nats - von_neumann_entropy(rho).nats;
}

enum class DefectMethod { Direct, Commutator };

inline const char* to_string(DefectMethod m) { return m == DefectMethod::Direct ? "direct" : "commutator"; }

struct UnitalityReport {
  /// Phi(1) - 1, d_S x d_S.
  ComplexMatrix defect;
  double defect_norm = 0.0;
  double tol = kVerdictTol;
  bool is_unital = false;
  DefectMethod method = DefectMethod::Direct;
  /// (j, j') -> sum_i <[B_{j'i}^dagger, B_{ji}]>; commutator method only.
  std::optional<std::map<std::pair<std::size_t, std::size_t>, cplx>> per_pair_contributions;

  ComplexMatrix unit_image() const { return defect + ComplexMatrix::identity(defect.rows()); }
};

namespace detail {

inline UnitalityReport make_report(ComplexMatrix defect, DefectMethod method, double tol) {
  UnitalityReport rep;
  rep.defect_norm = frobenius_norm(defect);
  rep.defect = std::move(defect);
  rep.tol = tol;
  rep.is_unital = rep.defect_norm <= tol;
  rep.method = method;
  return rep;
}

}  // namespace detail

/// Tr_R[U (1 (x) env) U^dagger] for any composite matrix (unitary or not).
inline ComplexMatrix reduced_unit_image(const ComplexMatrix& u, DimensionSplit split, const DensityMatrix& env) {
  if (env.dim() != split.dim_reservoir) throw ShapeError("reduced_unit_image: environment dimension mismatch");
  const ComplexMatrix lifted = kron(ComplexMatrix::identity(split.dim_system), env.matrix());
  return partial_trace(conjugate(u, lifted), split, Subsystem::Reservoir);
}

inline UnitalityReport unital_defect_direct(const BipartiteUnitary& u, const DensityMatrix& env,
                                            double tol = kVerdictTol) {
  const auto image = reduced_unit_image(u.matrix(), u.split(), env);
  return detail::make_report(image - ComplexMatrix::identity(u.split().dim_system), DefectMethod::Direct, tol);
}

/// Commutator form of the defect. Only equal to the direct form when the
/// blocks come from a unitary.
inline UnitalityReport unital_defect_commutator(const BlockDecomposition& blocks, const DensityMatrix& env,
                                                double tol = kVerdictTol) {
  const DimensionSplit split = blocks.split();
  if (env.dim() != split.dim_reservoir) throw ShapeError("unital_defect_commutator: environment dimension mismatch");
  const std::size_t ds = split.dim_system;
  const auto& pi = env.matrix();

  ComplexMatrix defect(ds, ds);
  std::map<std::pair<std::size_t, std::size_t>, cplx> pairs;
  for (std::size_t j = 0; j < ds; ++j)
    for (std::size_t jp = 0; jp < ds; ++jp) {
      cplx acc{};
      for (std::size_t i = 0; i < ds; ++i) {
        const auto& b = blocks.block(j, i);
        const auto bp_dag = dagger(blocks.block(jp, i));
        acc += trace(pi * (bp_dag * b - b * bp_dag));
      }
      defect(j, jp) = acc;
      pairs[{j, jp}] = acc;
    }
  auto rep = detail::make_report(std::move(defect), DefectMethod::Commutator, tol);
  rep.per_pair_contributions = std::move(pairs);
  return rep;
}

inline UnitalityReport unital_defect_commutator(const BipartiteUnitary& u, const DensityMatrix& env,
                                                double tol = kVerdictTol) {
  return unital_defect_commutator(block_decompose(u), env, tol);
}

}  // namespace qunital
