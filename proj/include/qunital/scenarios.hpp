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

// Two worked examples of energy-conserving channels that lower a subsystem's
// entropy:
//
//  * a qubit whose excited-state population is measured into a demon register
//    and then reset by a demon-controlled flip (measure + feedback);
//  * a two-qubit exchange that heats qubit 1 and cools qubit 2.
//
// Basis conventions: qubit {|g>, |e>} = {0, 1}; demon {|0>, |1>} = {0, 1};
// composite states are system-major (qubit (x) demon, qubit 1 (x) qubit 2).

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "qunital/channel.hpp"
#include "qunital/matrix.hpp"
#include "qunital/state.hpp"

namespace qunital {

struct LabeledOperator {
  std::string name;
  ComplexMatrix matrix;
};

struct Stage {
  std::string label;
  std::string description;
  /// True when this stage follows from the previous one by a unitary step.
  bool unitary_step = false;
  DensityMatrix joint_state;
  DensityMatrix system_reduced;
  DensityMatrix env_reduced;
  EntropyValue system_entropy;
  EntropyValue env_entropy;
  EntropyValue joint_entropy;
};

struct ChannelAnalysis {
  std::string name;
  std::string system_label;
  std::string env_label;
  std::vector<LabeledOperator> reservoir_blocks;
  ComplexMatrix expected_unit_image;
  UnitalityReport direct;
  UnitalityReport commutator;
  double method_disagreement = 0.0;
  double tp_defect = 0.0;
};

struct Verdict {
  std::string name;
  bool passed = false;
  /// Measured deviation from the expected value.
  double deviation = 0.0;
};

struct ScenarioReport {
  std::string scenario;
  std::vector<Stage> stages;
  std::vector<ChannelAnalysis> unitality;
  std::optional<double> heat_extracted;
  std::optional<double> work_bookkeeping;
  std::vector<Verdict> verdicts;
  std::vector<std::string> notes;

  bool passed() const {
    return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.passed; });
  }

  const Verdict* verdict(const std::string& name) const {
    for (const auto& v : verdicts)
      if (v.name == name) return &v;
    return nullptr;
  }

  const Stage* stage(const std::string& label) const {
    for (const auto& s : stages)
      if (s.label == label) return &s;
    return nullptr;
  }
};

struct DemonConfig {
  /// Excited-state population after the sweep to the small-gap point.
  double rho_ee = 0.5;
  double temperature = 1.0;
  double tol = kVerdictTol;
  /// Level splitting at the small-gap point; 0 is the ideal limit.
  double delta_e_x = 0.0;

  void validate() const {
    if (!(rho_ee >= 0.0 && rho_ee <= 1.0))
      throw ValidationError("rho_ee must lie in [0, 1], got " + std::to_string(rho_ee), {{"rho_ee", rho_ee}});
    if (!(temperature > 0.0) || !std::isfinite(temperature))
      throw ValidationError("temperature must be positive, got " + std::to_string(temperature),
                            {{"temperature", temperature}});
    if (!(tol > 0.0)) throw ValidationError("tol must be positive", {{"tol", tol}});
    if (!(delta_e_x >= 0.0) || !std::isfinite(delta_e_x))
      throw ValidationError("delta_e_x must be non-negative", {{"delta_e_x", delta_e_x}});
  }
};

namespace detail {

inline ComplexMatrix kb(std::size_t row, std::size_t col) { return ket_bra(2, row, col); }

inline const ComplexMatrix& pauli_x() {
  static const ComplexMatrix x = ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
  return x;
}

inline Stage make_stage(std::string label, std::string description, bool unitary_step, const DensityMatrix& joint,
                        DimensionSplit split) {
  auto sys = reduced_state(joint, split, Subsystem::System);
  auto env = reduced_state(joint, split, Subsystem::Reservoir);
  const auto s_sys = von_neumann_entropy(sys);
  const auto s_env = von_neumann_entropy(env);
  const auto s_joint = von_neumann_entropy(joint);
  return Stage{std::move(label), std::move(description), unitary_step, joint, std::move(sys),
               std::move(env),   s_sys,                  s_env,        s_joint};
}

inline ChannelAnalysis analyze_channel(std::string name, std::string sys_label, std::string env_label,
                                       const BipartiteUnitary& u, const DensityMatrix& env,
                                       const std::array<const char*, 2>& sys_basis, ComplexMatrix expected,
                                       double tol) {
  ChannelAnalysis a;
  a.name = std::move(name);
  a.system_label = std::move(sys_label);
  a.env_label = std::move(env_label);
  const auto blocks = block_decompose(u);
  for (std::size_t j = 0; j < u.split().dim_system; ++j)
    for (std::size_t i = 0; i < u.split().dim_system; ++i)
      a.reservoir_blocks.push_back(
          {std::string("F_") + sys_basis.at(j) + sys_basis.at(i), blocks.block(j, i)});
  a.expected_unit_image = std::move(expected);
  a.direct = unital_defect_direct(u, env, tol);
  a.commutator = unital_defect_commutator(blocks, env, tol);
  a.method_disagreement = frobenius_distance(a.direct.defect, a.commutator.defect);
  a.tp_defect = kraus_from_dilation(u, env).trace_preservation_defect();
  return a;
}

inline Verdict check_matrix(std::string name, const ComplexMatrix& got, const ComplexMatrix& want, double tol) {
  const double d = frobenius_distance(got, want);
  return {std::move(name), d <= tol, d};
}

inline Verdict check_value(std::string name, double got, double want, double tol) {
  const double d = std::abs(got - want);
  return {std::move(name), d <= tol, d};
}

}  // namespace detail

/// Measurement: the demon register flips iff the qubit is excited,
/// |g><g| (x) 1 + |e><e| (x) X.
inline BipartiteUnitary build_demon_measure_unitary() {
  using detail::kb;
  const ComplexMatrix u = kron(kb(0, 0), ComplexMatrix::identity(2)) + kron(kb(1, 1), detail::pauli_x());
  return BipartiteUnitary::make(u, {2, 2}, 1e-15);
}

/// Feedback: the qubit flips iff the demon register reads |1>,
/// 1 (x) |0><0| + X (x) |1><1|.
inline BipartiteUnitary build_demon_feedback_unitary() {
  using detail::kb;
  const ComplexMatrix u = kron(ComplexMatrix::identity(2), kb(0, 0)) + kron(detail::pauli_x(), kb(1, 1));
  return BipartiteUnitary::make(u, {2, 2}, 1e-15);
}

/// Closed form of feedback * measure, written out term by term:
/// |g><g|(x)|0><0| + |g><e|(x)|1><0| + |e><g|(x)|1><1| + |e><e|(x)|0><1|.
inline ComplexMatrix demon_cycle_operator() {
  using detail::kb;
  return kron(kb(0, 0), kb(0, 0)) + kron(kb(0, 1), kb(1, 0)) + kron(kb(1, 0), kb(1, 1)) + kron(kb(1, 1), kb(0, 1));
}

/// Heating-cooling exchange on qubit 1 (x) qubit 2:
/// |0><0|(x)|0><0| + |0><1|(x)|1><1| + |1><0|(x)|0><1| + |1><1|(x)|1><0|.
/// Not the symmetric SWAP: it sends |11> to |01> and |10> to |11>.
inline BipartiteUnitary build_heat_swap_unitary() {
  using detail::kb;
  const ComplexMatrix u =
      kron(kb(0, 0), kb(0, 0)) + kron(kb(0, 1), kb(1, 1)) + kron(kb(1, 0), kb(0, 1)) + kron(kb(1, 1), kb(1, 0));
  return BipartiteUnitary::make(u, {2, 2}, 1e-15);
}

inline ScenarioReport run_demon_cycle(const DemonConfig& cfg) {
  cfg.validate();
  using detail::kb;
  const DimensionSplit split{2, 2};
  const double rho_ee = cfg.rho_ee;
  const double rho_gg = 1.0 - rho_ee;
  const double tol = cfg.tol;

  ScenarioReport rep;
  rep.scenario = "demon";

  const auto ground = basis_state(2, 0);
  const auto demon_ready = basis_state(2, 0);

  const auto r0 = tensor(ground, demon_ready);
  rep.stages.push_back(detail::make_stage("t0", "point A: qubit in ground state, demon in |0>", false, r0, split));

  const auto qubit_x = validate_density(ComplexMatrix::diagonal({rho_gg, rho_ee}));
  const auto r1 = tensor(qubit_x, demon_ready);
  rep.stages.push_back(
      detail::make_stage("t1", "point X: thermal populations after the sweep and bath contact", false, r1, split));

  const auto measure = build_demon_measure_unitary();
  const auto feedback = build_demon_feedback_unitary();
  const auto r2 = measure.evolve(r1);
  rep.stages.push_back(detail::make_stage("t2", "demon has measured the qubit", true, r2, split));

  const auto r3 = feedback.evolve(r2);
  rep.stages.push_back(detail::make_stage("t3", "demon-controlled flip returned the qubit to |g>", true, r3, split));

  // Ground state follows the sweep back to A unchanged; only the label moves.
  rep.stages.push_back(detail::make_stage("t4", "qubit back at point A; demon awaits reset", true, r3, split));

  const auto cycle = feedback * measure;
  rep.unitality.push_back(detail::analyze_channel("qubit", "qubit", "demon", cycle, demon_ready, {"g", "e"},
                                                  2.0 * kb(0, 0), tol));
  const auto& qa = rep.unitality.back();

  const double s_x = rep.stages[1].system_entropy.nats;
  rep.heat_extracted = cfg.temperature * (s_x - rep.stages[0].system_entropy.nats);
  rep.work_bookkeeping = -cfg.delta_e_x * rho_ee + 0.0;

  auto& v = rep.verdicts;
  v.push_back(detail::check_matrix(
      "measured_state", r2.matrix(), rho_gg * kron(kb(0, 0), kb(0, 0)) + rho_ee * kron(kb(1, 1), kb(1, 1)), tol));
  v.push_back(detail::check_matrix("feedback_state", r3.matrix(),
                                   kron(kb(0, 0), ComplexMatrix::diagonal({rho_gg, rho_ee})), tol));
  v.push_back(detail::check_matrix("cycle_operator", cycle.matrix(), demon_cycle_operator(), tol));
  v.push_back(detail::check_matrix("unit_image_direct", qa.direct.unit_image(), qa.expected_unit_image, tol));
  v.push_back(detail::check_matrix("unit_image_commutator", qa.commutator.unit_image(), qa.expected_unit_image, tol));
  v.push_back({"methods_agree", qa.method_disagreement <= tol, qa.method_disagreement});
  v.push_back({"trace_preserving", qa.tp_defect <= std::max(tol, 1e-10), qa.tp_defect});

  const auto phi = kraus_from_dilation(cycle, demon_ready);
  v.push_back(detail::check_matrix("channel_matches_reduced_state", apply_channel(phi, qubit_x).matrix(),
                                   rep.stages[3].system_reduced.matrix(), tol));

  const double dq = rep.stages[3].system_entropy.nats - rep.stages[1].system_entropy.nats;
  const double dd = rep.stages[3].env_entropy.nats - rep.stages[1].env_entropy.nats;
  v.push_back(detail::check_value("qubit_entropy_change", dq, -s_x, tol));
  v.push_back(detail::check_value("demon_entropy_change", dd, s_x, tol));
  v.push_back(detail::check_value("channel_entropy_delta", entropy_delta(phi, qubit_x), -s_x, tol));

  double joint_drift = 0.0;
  for (std::size_t k = 1; k < rep.stages.size(); ++k)
    if (rep.stages[k].unitary_step)
      joint_drift = std::max(joint_drift,
                             std::abs(rep.stages[k].joint_entropy.nats - rep.stages[k - 1].joint_entropy.nats));
  v.push_back({"joint_entropy_conserved", joint_drift <= tol, joint_drift});

  rep.notes.push_back("demon register keeps entropy " + std::to_string(rep.stages.back().env_entropy.nats) +
                      " nats; its reset for the next cycle is not modeled");
  return rep;
}

inline ScenarioReport run_heating_cooling(double tol = kVerdictTol) {
  using detail::kb;
  const DimensionSplit split{2, 2};
  ScenarioReport rep;
  rep.scenario = "swap";

  const auto q1_initial = basis_state(2, 0);
  const auto q2_initial = maximally_mixed(2);
  const auto ri = tensor(q1_initial, q2_initial);
  const auto u = build_heat_swap_unitary();
  const auto rf = u.evolve(ri);
  rep.stages.push_back(detail::make_stage("initial", "qubit 1 in |0>, qubit 2 maximally mixed", false, ri, split));
  rep.stages.push_back(detail::make_stage("final", "after the exchange", true, rf, split));

  rep.unitality.push_back(detail::analyze_channel("heating", "qubit 1", "qubit 2", u, q2_initial, {"0", "1"},
                                                  ComplexMatrix::identity(2), tol));
  const auto u_cool = u.swap_roles();
  rep.unitality.push_back(detail::analyze_channel("cooling", "qubit 2", "qubit 1", u_cool, q1_initial, {"0", "1"},
                                                  2.0 * kb(0, 0), tol));

  auto& v = rep.verdicts;
  v.push_back(detail::check_matrix("initial_state", ri.matrix(),
                                   kron(kb(0, 0), 0.5 * ComplexMatrix::identity(2)), tol));
  v.push_back(detail::check_matrix("final_state", rf.matrix(),
                                   kron(0.5 * ComplexMatrix::identity(2), kb(0, 0)), tol));
  for (const auto& a : rep.unitality) {
    v.push_back(detail::check_matrix(a.name + "_unit_image_direct", a.direct.unit_image(), a.expected_unit_image, tol));
    v.push_back(
        detail::check_matrix(a.name + "_unit_image_commutator", a.commutator.unit_image(), a.expected_unit_image, tol));
    v.push_back({a.name + "_methods_agree", a.method_disagreement <= tol, a.method_disagreement});
    v.push_back({a.name + "_trace_preserving", a.tp_defect <= std::max(tol, 1e-10), a.tp_defect});
  }

  const auto heat = kraus_from_dilation(u, q2_initial);
  const auto cool = kraus_from_dilation(u_cool, q1_initial);
  const auto& fin = rep.stages[1];
  const auto& ini = rep.stages[0];
  v.push_back(detail::check_matrix("heating_matches_reduced_state", apply_channel(heat, q1_initial).matrix(),
                                   fin.system_reduced.matrix(), tol));
  v.push_back(detail::check_matrix("cooling_matches_reduced_state", apply_channel(cool, q2_initial).matrix(),
                                   fin.env_reduced.matrix(), tol));

  const double ln2 = std::log(2.0);
  const double d1 = fin.system_entropy.nats - ini.system_entropy.nats;
  const double d2 = fin.env_entropy.nats - ini.env_entropy.nats;
  v.push_back(detail::check_value("qubit1_entropy_change", d1, ln2, tol));
  v.push_back(detail::check_value("qubit2_entropy_change", d2, -ln2, tol));
  v.push_back(detail::check_value("heating_channel_entropy_delta", entropy_delta(heat, q1_initial), ln2, tol));
  v.push_back(detail::check_value("cooling_channel_entropy_delta", entropy_delta(cool, q2_initial), -ln2, tol));
  v.push_back(detail::check_value("subsystem_entropy_balance", d1 + d2, 0.0, tol));
  v.push_back(detail::check_value("joint_entropy_conserved", fin.joint_entropy.nats, ini.joint_entropy.nats, tol));

  rep.notes.push_back("heating channel is unital; cooling channel is non-unital");
  return rep;
}

}  // namespace qunital
