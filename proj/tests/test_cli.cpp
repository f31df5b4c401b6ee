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

#include "process.hpp"
#include "qunital/io.hpp"

using namespace qunital;
using namespace qunital::testing;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

TEST_CASE("cli demon", "[cli]") {
  const auto text = run_process(cli() + " demon");
  CHECK(text.exit_code == 0);
  CHECK_THAT(text.out, ContainsSubstring("heat_extracted 0.693147181"));
  CHECK_THAT(text.out, ContainsSubstring("result: PASS"));

  const auto js = run_process(cli() + " demon --format json");
  REQUIRE(js.exit_code == 0);
  const auto j = json::parse(js.out);
  CHECK(j["unitality"][0]["direct"]["unit_image"] == to_json(ComplexMatrix::diagonal({2.0, 0.0})));
  CHECK_THAT(j["heat_extracted"].get<double>(), WithinAbs(std::log(2.0), 1e-12));

  const auto cold = run_process(cli() + " demon --rho-ee 0 --format json");
  CHECK(cold.exit_code == 0);
  const auto cold_doc = json::parse(cold.out);
  for (const auto& s : cold_doc["stages"]) {
    CHECK(s["system_entropy"] == 0.0);
    CHECK(s["env_entropy"] == 0.0);
  }

  CHECK(run_process(cli() + " demon --rho-ee 1.5").exit_code == 1);
  CHECK(run_process(cli() + " demon --temperature -1").exit_code == 1);
  CHECK(run_process(cli() + " demon --format yaml").exit_code == 1);
  CHECK(run_process(cli() + " demon --kb-units --format json").exit_code == 0);
}

TEST_CASE("cli swap", "[cli]") {
  const auto text = run_process(cli() + " swap");
  CHECK(text.exit_code == 0);

  const auto js = run_process(cli() + " swap --format json");
  REQUIRE(js.exit_code == 0);
  const auto j = json::parse(js.out);
  CHECK(j["unitality"][0]["name"] == "heating");
  CHECK(j["unitality"][0]["direct"]["is_unital"] == true);
  CHECK(j["unitality"][1]["direct"]["defect"] == to_json(ComplexMatrix::diagonal({1.0, -1.0})));
  CHECK(j["passed"] == true);

  CHECK(run_process(cli() + " swap --tol 1e-15").exit_code == 0);
}

TEST_CASE("cli check", "[cli]") {
  const auto demon = run_process(cli() + " check " + sample("demon_cycle_request.json"));
  CHECK(demon.exit_code == 3);
  CHECK_THAT(demon.out, ContainsSubstring("verdict: non-unital"));

  const auto js = run_process(cli() + " check --format json " + sample("demon_cycle_request.json"));
  CHECK(js.exit_code == 3);
  CHECK(json::parse(js.out)["direct"]["defect"] == to_json(ComplexMatrix::diagonal({1.0, -1.0})));

  CHECK(run_process(cli() + " check " + sample("identity_request.json")).exit_code == 0);
  CHECK(run_process(cli() + " check " + sample("heating_request.json")).exit_code == 0);
  CHECK(run_process(cli() + " check " + sample("non_unitary_request.json")).exit_code == 1);
  CHECK(run_process(cli() + " check /nonexistent.json").exit_code == 1);
  CHECK(run_process(cli() + " check").exit_code == 1);

  // tolerance override: a loose tolerance accepts the demon as unital
  CHECK(run_process(cli() + " check --tol 2 " + sample("demon_cycle_request.json")).exit_code == 0);

  const auto diag = run_process(cli() + " check " + sample("non_unitary_request.json"), true);
  CHECK_THAT(diag.out, ContainsSubstring("unitarity violation"));
}

TEST_CASE("cli sweep", "[cli]") {
  const auto mm = run_process(cli() + " sweep --env-mode maxmixed --trials 500 --format json");
  REQUIRE(mm.exit_code == 0);
  const auto j = json::parse(mm.out);
  CHECK(j["unital_count"] == 500);
  CHECK(j["violations"].empty());

  const auto closed = run_process(cli() + " sweep --dim-env 1 --trials 100 --format json");
  REQUIRE(closed.exit_code == 0);
  const auto c = json::parse(closed.out);
  CHECK(std::abs(c["min_entropy_delta_unital"].get<double>()) <= 1e-9);
  CHECK(std::abs(c["max_entropy_delta_unital"].get<double>()) <= 1e-9);

  const auto a = run_process(cli() + " sweep --trials 200 --seed 7 --format json");
  const auto b = run_process(cli() + " sweep --trials 200 --seed 7 --threads 3 --format json");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);

  CHECK(run_process(cli() + " sweep --env-mode thermal").exit_code == 1);
  CHECK(run_process(cli() + " sweep --trials 0").exit_code == 1);
  CHECK(run_process(cli() + " sweep --dim-sys x").exit_code == 1);
}

TEST_CASE("cli usage", "[cli]") {
  CHECK(run_process(cli()).exit_code == 1);
  CHECK(run_process(cli() + " frobnicate").exit_code == 1);
  CHECK(run_process(cli() + " --help").exit_code == 0);
}

TEST_CASE("NO_COLOR keeps text plain", "[cli]") {
  const auto r = run_process("NO_COLOR=1 " + cli() + " swap");
  CHECK(r.out.find('\033') == std::string::npos);
}
