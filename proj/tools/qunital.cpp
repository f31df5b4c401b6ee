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


// qunital command-line front end.
//
// Exit codes: 0 pass / unital, 1 usage or input error, 2 scenario verdict
// failure, 3 non-unital channel (check).

#include <cstdlib>
#include <iostream>
#include <string>

#include <unistd.h>

#include <CLI11.hpp>

#include "qunital/qunital.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerdict = 2;
constexpr int kExitNonUnital = 3;

struct CommonFlags {
  std::string format = "text";
  bool kb_units = false;
};

qunital::RenderOptions render_options(const CommonFlags& f) {
  qunital::RenderOptions opt;
  opt.kb_units = f.kb_units;
  opt.color = f.format == "text" && std::getenv("NO_COLOR") == nullptr && ::isatty(STDOUT_FILENO);
  return opt;
}

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  cmd->add_flag("--kb-units", f.kb_units, "Report entropies in units of k_B ln 2 instead of nats");
}

template <typename Report>
void emit(const Report& rep, const CommonFlags& f) {
  const auto opt = render_options(f);
  if (f.format == "json")
    std::cout << qunital::to_json(rep, opt).dump(2) << "\n";
  else
    std::cout << qunital::render_text(rep, opt);
}

void emit_check(const qunital::CheckOutcome& c, const CommonFlags& f) {
  if (f.format == "json")
    std::cout << qunital::to_json(c).dump(2) << "\n";
  else
    std::cout << qunital::render_text(c);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unitality checks and entropy bookkeeping for quantum channels from unitary dilations"};
  app.require_subcommand(1);

  CommonFlags demon_flags;
  qunital::DemonConfig demon_cfg;
  auto* demon = app.add_subcommand("demon", "Run the qubit measure-and-feedback demon cycle");
  demon->add_option("--rho-ee", demon_cfg.rho_ee, "Excited-state population at the small-gap point")
      ->check(CLI::Range(0.0, 1.0));
  demon->add_option("--temperature", demon_cfg.temperature, "Bath temperature (k_B = 1)")
      ->check(CLI::PositiveNumber);
  demon->add_option("--delta-e-x", demon_cfg.delta_e_x, "Level splitting at the small-gap point (0 = ideal)")
      ->check(CLI::NonNegativeNumber);
  demon->add_option("--tol", demon_cfg.tol, "Verdict tolerance")->check(CLI::PositiveNumber);
  add_common(demon, demon_flags);

  CommonFlags swap_flags;
  double swap_tol = qunital::kVerdictTol;
  auto* swap = app.add_subcommand("swap", "Run the two-qubit heating-cooling exchange");
  swap->add_option("--tol", swap_tol, "Verdict tolerance")->check(CLI::PositiveNumber);
  add_common(swap, swap_flags);

  CommonFlags check_flags;
  std::string request_path;
  double check_tol = 0.0;
  auto* check = app.add_subcommand("check", "Decide unitality of a user-supplied dilation (JSON request)");
  check->add_option("request", request_path, "CheckRequest JSON file")->required();
  auto* check_tol_opt = check->add_option("--tol", check_tol, "Unitality tolerance (overrides the file)")
                            ->check(CLI::PositiveNumber);
  add_common(check, check_flags);

  CommonFlags sweep_flags;
  qunital::SweepOptions sweep_opt;
  std::string env_mode = "pure";
  auto* sweep = app.add_subcommand("sweep", "Random property sweep over Haar dilations");
  sweep->add_option("--dim-sys", sweep_opt.dim_system, "System dimension")->check(CLI::PositiveNumber);
  sweep->add_option("--dim-env", sweep_opt.dim_reservoir, "Environment dimension")->check(CLI::PositiveNumber);
  sweep->add_option("--trials", sweep_opt.trials, "Number of trials")->check(CLI::PositiveNumber);
  sweep->add_option("--env-mode", env_mode, "Environment state family")
      ->check(CLI::IsMember({"pure", "mixed", "maxmixed"}));
  sweep->add_option("--seed", sweep_opt.seed, "Base seed");
  sweep->add_option("--threads", sweep_opt.threads, "Worker threads (0 = all cores); output does not depend on it");
  add_common(sweep, sweep_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*demon) {
      const auto rep = qunital::run_demon_cycle(demon_cfg);
      emit(rep, demon_flags);
      return rep.passed() ? kExitOk : kExitVerdict;
    }
    if (*swap) {
      const auto rep = qunital::run_heating_cooling(swap_tol);
      emit(rep, swap_flags);
      return rep.passed() ? kExitOk : kExitVerdict;
    }
    if (*check) {
      auto req = qunital::load_check_request(request_path);
      if (check_tol_opt->count() > 0) req.tol = check_tol;
      const auto outcome = qunital::run_check(req);
      emit_check(outcome, check_flags);
      return outcome.is_unital() ? kExitOk : kExitNonUnital;
    }
    if (*sweep) {
      sweep_opt.env_mode = env_mode == "pure"    ? qunital::EnvMode::Pure
                           : env_mode == "mixed" ? qunital::EnvMode::Mixed
                                                 : qunital::EnvMode::MaximallyMixed;
      const auto res = qunital::h_theorem_sweep(sweep_opt);
      emit(res, sweep_flags);
      return res.passed() ? kExitOk : kExitVerdict;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
