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


#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qunital/random.hpp"

using namespace qunital;
using Catch::Matchers::WithinAbs;

TEST_CASE("Rng streams are keyed by (seed, trial)", "[random]") {
  Rng a({42, 3}), b({42, 3}), c({42, 4}), d({43, 3});
  const auto x = a.next_u64();
  CHECK(x == b.next_u64());
  CHECK(x != c.next_u64());
  CHECK(x != d.next_u64());

  Rng g({1, 0});
  double mean = 0.0, var = 0.0;
  constexpr int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double z = g.normal();
    mean += z;
    var += z * z;
  }
  mean /= n;
  var = var / n - mean * mean;
  CHECK_THAT(mean, WithinAbs(0.0, 0.01));
  CHECK_THAT(var, WithinAbs(1.0, 0.01));
}

TEST_CASE("haar_unitary", "[random]") {
  SECTION("d = 1 is a phase") {
    const auto u = haar_unitary(1, SamplerSeed{5, 0});
    CHECK_THAT(std::abs(u(0, 0)), WithinAbs(1.0, 1e-15));
  }

  SECTION("unitary with unit columns") {
    for (std::uint64_t t = 0; t < 200; ++t) {
      const std::size_t d = 1 + t % 9;
      const auto u = haar_unitary(d, SamplerSeed{6, t});
      CHECK(unitarity_defect(u) <= 1e-12);
      for (std::size_t c = 0; c < d; ++c) {
        double n = 0.0;
        for (std::size_t r = 0; r < d; ++r) n += std::norm(u(r, c));
        CHECK_THAT(std::sqrt(n), WithinAbs(1.0, 1e-12));
      }
    }
  }

  SECTION("second moment <|U_00|^2> = 1/d") {
    for (std::size_t d : {2u, 3u}) {
      double acc = 0.0;
      constexpr int n = 10000;
      for (int t = 0; t < n; ++t) acc += std::norm(haar_unitary(d, SamplerSeed{7, static_cast<std::uint64_t>(t)})(0, 0));
      CHECK_THAT(acc / n, WithinAbs(1.0 / static_cast<double>(d), 0.02));
    }
  }

  SECTION("fourth moment <|U_00|^4> = 2/(d(d+1)) and <|tr U|^2> = 1") {
    constexpr std::size_t d = 3;
    double m4 = 0.0;
    double tr2 = 0.0;
    cplx tr1{};
    constexpr int n = 20000;
    for (int t = 0; t < n; ++t) {
      const auto u = haar_unitary(d, SamplerSeed{8, static_cast<std::uint64_t>(t)});
      const double p = std::norm(u(0, 0));
      m4 += p * p;
      tr1 += trace(u);
      tr2 += std::norm(trace(u));
    }
    CHECK_THAT(m4 / n, WithinAbs(2.0 / (d * (d + 1.0)), 0.01));
    CHECK_THAT(tr2 / n, WithinAbs(1.0, 0.05));
    CHECK(std::abs(tr1 / static_cast<double>(n)) < 0.03);
  }

  SECTION("reproducible") {
    CHECK(haar_unitary(4, SamplerSeed{9, 1}) == haar_unitary(4, SamplerSeed{9, 1}));
    CHECK_FALSE(haar_unitary(4, SamplerSeed{9, 1}) == haar_unitary(4, SamplerSeed{9, 2}));
  }

  CHECK_THROWS_AS(haar_unitary(0, SamplerSeed{}), ShapeError);
}

TEST_CASE("random_density", "[random]") {
  SECTION("rank one is pure") {
    for (std::uint64_t t = 0; t < 50; ++t) CHECK_THAT(purity(random_density(3, 1, SamplerSeed{10, t})), WithinAbs(1.0, 1e-10));
  }

  SECTION("full rank qubits have entropy strictly inside (0, ln 2)") {
    double acc = 0.0;
    constexpr int n = 500;
    for (int t = 0; t < n; ++t) acc += von_neumann_entropy(random_density(2, 2, SamplerSeed{11, static_cast<std::uint64_t>(t)})).nats;
    const double mean = acc / n;
    CHECK(mean > 0.0);
    CHECK(mean < std::log(2.0));
  }

  SECTION("unit trace and requested rank") {
    for (std::uint64_t t = 0; t < 100; ++t) {
      const std::size_t d = 1 + t % 5;
      const std::size_t rank = 1 + t % d;
      const auto rho = random_density(d, rank, SamplerSeed{12, t});
      CHECK_THAT(trace(rho.matrix()).real(), WithinAbs(1.0, 1e-12));
      std::size_t nonzero = 0;
      for (double v : rho.eigenvalues())
        if (v > 1e-12) ++nonzero;
      CHECK(nonzero == rank);
    }
  }

  CHECK_THROWS_AS(random_density(2, 3, SamplerSeed{}), std::invalid_argument);
  CHECK_THROWS_AS(random_density(2, 0, SamplerSeed{}), std::invalid_argument);
}

TEST_CASE("h_theorem_sweep", "[random][property]") {
  SECTION("maximally mixed environments are always unital") {
    const auto r = h_theorem_sweep(2, 3, 300, EnvMode::MaximallyMixed, 42);
    CHECK(r.unital_count == 300);
    CHECK(r.nonunital_count == 0);
    CHECK(r.passed());
    CHECK(r.min_entropy_delta_unital >= -1e-9);
  }

  SECTION("trivial reservoir gives unitary conjugations") {
    const auto r = h_theorem_sweep(3, 1, 100, EnvMode::Pure, 42);
    CHECK(r.unital_count == 100);
    CHECK_THAT(r.min_entropy_delta_unital, WithinAbs(0.0, 1e-9));
    CHECK_THAT(r.max_entropy_delta_unital, WithinAbs(0.0, 1e-9));
    CHECK(r.passed());
  }

  SECTION("pure environments are generically non-unital") {
    const auto r = h_theorem_sweep(2, 2, 1000, EnvMode::Pure, 42);
    CHECK(r.trials == 1000);
    CHECK(r.unital_count + r.nonunital_count == r.trials);
    CHECK(r.nonunital_count == 1000);
    CHECK(r.max_method_disagreement <= 1e-10);
    CHECK(r.max_tp_defect <= 1e-10);
    CHECK(r.passed());
  }

  SECTION("deterministic and independent of thread count") {
    SweepOptions opt;
    opt.dim_system = 3;
    opt.dim_reservoir = 2;
    opt.trials = 200;
    opt.env_mode = EnvMode::Mixed;
    const auto a = h_theorem_sweep(opt);
    opt.threads = 4;
    const auto b = h_theorem_sweep(opt);
    CHECK(a.unital_count == b.unital_count);
    CHECK(a.max_method_disagreement == b.max_method_disagreement);
    CHECK(a.max_tp_defect == b.max_tp_defect);
    CHECK(a.violations.size() == b.violations.size());
  }

  SECTION("invalid parameters") {
    CHECK_THROWS_AS(h_theorem_sweep(0, 2, 10, EnvMode::Pure, 1), std::invalid_argument);
    CHECK_THROWS_AS(h_theorem_sweep(2, 2, 0, EnvMode::Pure, 1), std::invalid_argument);
  }
}
