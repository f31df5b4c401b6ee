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
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "qunital/channel.hpp"
#include "qunital/matrix.hpp"
#include "qunital/state.hpp"

namespace qunital {

/// Identifies one independent random stream: the same (seed, trial_index)
/// always reproduces the same draws.
struct SamplerSeed {
  std::uint64_t seed = 0;
  std::uint64_t trial_index = 0;
};

namespace detail {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace detail

/// mt19937_64 keyed by a splitmix64 mix of (seed, trial_index). Gaussians come
/// from Box-Muller on 53-bit uniforms, so streams are identical across
/// standard library implementations.
class Rng {
public:
  explicit Rng(SamplerSeed s) : engine_(detail::splitmix64(detail::splitmix64(s.seed) ^ s.trial_index)) {}

  /// Uniform on (0, 1].
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
  }

  /// Standard normal.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double theta = 2.0 * std::numbers::pi * uniform();
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  /// Complex Gaussian with E|z|^2 = 1.
  cplx complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
  }

  std::uint64_t next_u64() { return engine_(); }

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

inline ComplexMatrix ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  ComplexMatrix g(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) g(i, j) = rng.complex_normal();
  return g;
}

/// Haar-random unitary: Gram-Schmidt on the columns of a Ginibre matrix. The
/// implied triangular factor has a positive real diagonal, which is the phase
/// convention that makes the result Haar distributed.
inline ComplexMatrix haar_unitary(std::size_t d, Rng& rng) {
  if (d == 0) throw ShapeError("haar_unitary: dimension must be positive");
  ComplexMatrix q = ginibre(d, d, rng);
  for (std::size_t k = 0; k < d; ++k) {
    // two passes of modified Gram-Schmidt
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t j = 0; j < k; ++j) {
        cplx proj{};
        for (std::size_t r = 0; r < d; ++r) proj += std::conj(q(r, j)) * q(r, k);
        for (std::size_t r = 0; r < d; ++r) q(r, k) -= proj * q(r, j);
      }
    double norm = 0.0;
    for (std::size_t r = 0; r < d; ++r) norm += std::norm(q(r, k));
    norm = std::sqrt(norm);
    for (std::size_t r = 0; r < d; ++r) q(r, k) /= norm;
  }
  return q;
}

inline ComplexMatrix haar_unitary(std::size_t d, SamplerSeed seed) {
  Rng rng(seed);
  return haar_unitary(d, rng);
}

/// G G^dagger / tr(G G^dagger) with G a d x rank Ginibre matrix.
inline DensityMatrix random_density(std::size_t d, std::size_t rank, Rng& rng) {
  if (d == 0 || rank == 0 || rank > d)
    throw std::invalid_argument("random_density: rank " + std::to_string(rank) + " out of range for dimension " +
                                std::to_string(d));
  const ComplexMatrix g = ginibre(d, rank, rng);
  ComplexMatrix m = g * dagger(g);
  const double tr = trace(m).real();
  m = (1.0 / tr) * m;
  // exact hermiticity
  for (std::size_t i = 0; i < d; ++i) {
    m(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < d; ++j) m(j, i) = std::conj(m(i, j));
  }
  return validate_density(m);
}

inline DensityMatrix random_density(std::size_t d, std::size_t rank, SamplerSeed seed) {
  Rng rng(seed);
  return random_density(d, rank, rng);
}

enum class EnvMode { Pure, Mixed, MaximallyMixed };

inline const char* to_string(EnvMode m) {
  switch (m) {
    case EnvMode::Pure: return "pure";
    case EnvMode::Mixed: return "mixed";
    case EnvMode::MaximallyMixed: return "maxmixed";
  }
  return "?";
}

struct SweepViolation {
  std::uint64_t trial_index = 0;
  std::string description;
};

struct SweepResult {
  std::size_t dim_system = 0;
  std::size_t dim_reservoir = 0;
  EnvMode env_mode = EnvMode::Pure;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::size_t unital_count = 0;
  std::size_t nonunital_count = 0;
  double max_method_disagreement = 0.0;
  /// Worst trace-preservation defect over all derived Kraus channels.
  double max_tp_defect = 0.0;
  /// Extremes of entropy_delta over unital channels; +inf / -inf when none.
  double min_entropy_delta_unital = std::numeric_limits<double>::infinity();
  double max_entropy_delta_unital = -std::numeric_limits<double>::infinity();
  std::vector<SweepViolation> violations;

  bool passed() const noexcept { return violations.empty(); }
};

struct SweepOptions {
  std::size_t dim_system = 2;
  std::size_t dim_reservoir = 2;
  std::size_t trials = 1000;
  EnvMode env_mode = EnvMode::Pure;
  std::uint64_t seed = 42;
  std::size_t states_per_channel = 20;
  double unital_tol = 1e-9;
  double agreement_tol = 1e-9;
  double entropy_tol = 1e-9;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 1;
};

namespace detail {

struct TrialOutcome {
  bool unital = false;
  double disagreement = 0.0;
  double tp_defect = 0.0;
  double min_delta = std::numeric_limits<double>::infinity();
  double max_delta = -std::numeric_limits<double>::infinity();
  std::vector<std::string> problems;
};

inline TrialOutcome run_trial(const SweepOptions& opt, std::uint64_t trial) {
  Rng rng({opt.seed, trial});
  const DimensionSplit split{opt.dim_system, opt.dim_reservoir};
  const auto u = BipartiteUnitary::make(haar_unitary(split.composite(), rng), split, 1e-10);

  const DensityMatrix env = [&] {
    switch (opt.env_mode) {
      case EnvMode::Pure: return random_density(opt.dim_reservoir, 1, rng);
      case EnvMode::Mixed: return random_density(opt.dim_reservoir, opt.dim_reservoir, rng);
      case EnvMode::MaximallyMixed: break;
    }
    return maximally_mixed(opt.dim_reservoir);
  }();

  TrialOutcome out;
  const auto direct = unital_defect_direct(u, env, opt.unital_tol);
  const auto comm = unital_defect_commutator(u, env, opt.unital_tol);
  out.disagreement = frobenius_distance(direct.defect, comm.defect);
  if (out.disagreement > opt.agreement_tol)
    out.problems.push_back("unitality methods disagree by " + std::to_string(out.disagreement));

  const auto phi = kraus_from_dilation(u, env);
  out.tp_defect = phi.trace_preservation_defect();

  out.unital = direct.is_unital;
  if (out.unital) {
    for (std::size_t k = 0; k < opt.states_per_channel; ++k) {
      const std::size_t rank = 1 + k % opt.dim_system;
      const auto rho = random_density(opt.dim_system, rank, rng);
      const double delta = entropy_delta(phi, rho);
      out.min_delta = std::min(out.min_delta, delta);
      out.max_delta = std::max(out.max_delta, delta);
    }
    if (out.min_delta < -opt.entropy_tol)
      out.problems.push_back("unital channel decreased entropy by " + std::to_string(-out.min_delta));
  }
  return out;
}

}  // namespace detail

/// Draws Haar unitaries and environments, checks that the direct and
/// commutator defects agree, and that every unital channel never lowers the
/// entropy of random input states. Trials are independent and aggregated in
/// index order, so the result does not depend on `threads`.
inline SweepResult h_theorem_sweep(const SweepOptions& opt) {
  if (opt.dim_system == 0 || opt.dim_reservoir == 0) throw std::invalid_argument("h_theorem_sweep: dimensions must be >= 1");
  if (opt.trials == 0) throw std::invalid_argument("h_theorem_sweep: trials must be >= 1");

  std::vector<detail::TrialOutcome> outcomes(opt.trials);
  unsigned workers = opt.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : opt.threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, opt.trials));
  if (workers <= 1) {
    for (std::size_t t = 0; t < opt.trials; ++t) outcomes[t] = detail::run_trial(opt, t);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t t = w; t < opt.trials; t += workers) outcomes[t] = detail::run_trial(opt, t);
      });
  }

  SweepResult res;
  res.dim_system = opt.dim_system;
  res.dim_reservoir = opt.dim_reservoir;
  res.env_mode = opt.env_mode;
  res.seed = opt.seed;
  res.trials = opt.trials;
  for (std::size_t t = 0; t < opt.trials; ++t) {
    const auto& o = outcomes[t];
    (o.unital ? res.unital_count : res.nonunital_count)++;
    res.max_method_disagreement = std::max(res.max_method_disagreement, o.disagreement);
    res.max_tp_defect = std::max(res.max_tp_defect, o.tp_defect);
    if (o.unital) {
      res.min_entropy_delta_unital = std::min(res.min_entropy_delta_unital, o.min_delta);
      res.max_entropy_delta_unital = std::max(res.max_entropy_delta_unital, o.max_delta);
    }
    for (const auto& p : o.problems) res.violations.push_back({t, p});
  }
  return res;
}

inline SweepResult h_theorem_sweep(std::size_t d_sys, std::size_t d_env, std::size_t trials, EnvMode mode,
                                   std::uint64_t seed) {
  SweepOptions opt;
  opt.dim_system = d_sys;
  opt.dim_reservoir = d_env;
  opt.trials = trials;
  opt.env_mode = mode;
  opt.seed = seed;
  return h_theorem_sweep(opt);
}

}  // namespace qunital
