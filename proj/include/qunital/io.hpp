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

// JSON documents and text rendering for matrices and reports.
//
// MatrixDocument:
//   {"rows": R, "cols": C, "entries": [[[re, im], ...], ...],
//    "split": {"dim_system": dS, "dim_reservoir": dR}}   // split optional
// `entries` is emitted as one array per row; a flat row-major list of R*C
// pairs is also accepted on input.
//
// CheckRequest:
//   {"unitary": MatrixDocument (with split), "env": MatrixDocument, "tol": 1e-9}

#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "qunital/channel.hpp"
#include "qunital/matrix.hpp"
#include "qunital/random.hpp"
#include "qunital/scenarios.hpp"
#include "qunital/state.hpp"

namespace qunital {

using json = nlohmann::json;

/// Malformed or inconsistent input document.
class DocumentError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct MatrixDocument {
  ComplexMatrix matrix;
  std::optional<DimensionSplit> split;
};

inline json to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

inline json to_json(const MatrixDocument& doc) {
  json j = to_json(doc.matrix);
  if (doc.split) j["split"] = {{"dim_system", doc.split->dim_system}, {"dim_reservoir", doc.split->dim_reservoir}};
  return j;
}

namespace detail {

inline std::size_t positive_size(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j.at(key).is_number_integer() || j.at(key).get<long long>() <= 0)
    throw DocumentError(where + ": \"" + key + "\" must be a positive integer");
  return j.at(key).get<std::size_t>();
}

inline cplx parse_pair(const json& p, const std::string& where) {
  if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
    throw DocumentError(where + ": each entry must be a [re, im] pair of numbers");
  const double re = p[0].get<double>();
  const double im = p[1].get<double>();
  if (!std::isfinite(re) || !std::isfinite(im)) throw DocumentError(where + ": non-finite entry");
  return {re, im};
}

}  // namespace detail

inline MatrixDocument matrix_from_json(const json& j, const std::string& where = "matrix") {
  if (!j.is_object()) throw DocumentError(where + ": expected an object");
  const std::size_t rows = detail::positive_size(j, "rows", where);
  const std::size_t cols = detail::positive_size(j, "cols", where);
  if (!j.contains("entries") || !j.at("entries").is_array()) throw DocumentError(where + ": missing \"entries\" array");
  const auto& e = j.at("entries");

  std::vector<cplx> data;
  data.reserve(rows * cols);
  const bool nested = !e.empty() && e[0].is_array() && !e[0].empty() && e[0][0].is_array();
  if (nested) {
    if (e.size() != rows) throw DocumentError(where + ": \"entries\" has " + std::to_string(e.size()) + " rows, expected " + std::to_string(rows));
    for (const auto& row : e) {
      if (!row.is_array() || row.size() != cols)
        throw DocumentError(where + ": every row of \"entries\" must hold " + std::to_string(cols) + " pairs");
      for (const auto& p : row) data.push_back(detail::parse_pair(p, where));
    }
  } else {
    if (e.size() != rows * cols)
      throw DocumentError(where + ": \"entries\" has " + std::to_string(e.size()) + " pairs, expected " +
                          std::to_string(rows * cols));
    for (const auto& p : e) data.push_back(detail::parse_pair(p, where));
  }

  MatrixDocument doc{ComplexMatrix(rows, cols, std::move(data)), std::nullopt};
  if (j.contains("split")) {
    const auto& s = j.at("split");
    if (!s.is_object()) throw DocumentError(where + ": \"split\" must be an object");
    DimensionSplit split{detail::positive_size(s, "dim_system", where + ".split"),
                         detail::positive_size(s, "dim_reservoir", where + ".split")};
    if (split.composite() != rows || rows != cols)
      throw DocumentError(where + ": split " + std::to_string(split.dim_system) + "x" +
                          std::to_string(split.dim_reservoir) + " does not match a " + std::to_string(rows) + "x" +
                          std::to_string(cols) + " matrix");
    doc.split = split;
  }
  return doc;
}

struct CheckRequest {
  BipartiteUnitary unitary;
  DensityMatrix env;
  double tol = kVerdictTol;
};

/// Parses and validates a request. Throws DocumentError for malformed JSON
/// and ValidationError when the unitary or environment fails its checks.
inline CheckRequest check_request_from_json(const json& j) {
  if (!j.is_object()) throw DocumentError("request: expected an object");
  if (!j.contains("unitary")) throw DocumentError("request: missing \"unitary\"");
  if (!j.contains("env")) throw DocumentError("request: missing \"env\"");
  auto u = matrix_from_json(j.at("unitary"), "unitary");
  if (!u.split) throw DocumentError("unitary: \"split\" is required");
  const auto env_doc = matrix_from_json(j.at("env"), "env");
  double tol = kVerdictTol;
  if (j.contains("tol")) {
    if (!j.at("tol").is_number() || !(j.at("tol").get<double>() > 0.0))
      throw DocumentError("request: \"tol\" must be a positive number");
    tol = j.at("tol").get<double>();
  }
  auto unitary = BipartiteUnitary::make(std::move(u.matrix), *u.split, kVerdictTol);
  DensityMatrix env = [&] {
    try {
      return validate_density(env_doc.matrix);
    } catch (const ValidationError& e) {
      throw ValidationError(std::string("env: ") + e.what(), e.checks());
    }
  }();
  if (env.dim() != unitary.split().dim_reservoir)
    throw DocumentError("env: dimension " + std::to_string(env.dim()) + " does not match reservoir dimension " +
                        std::to_string(unitary.split().dim_reservoir));
  return CheckRequest{std::move(unitary), std::move(env), tol};
}

inline CheckRequest load_check_request(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DocumentError("cannot open request file: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw DocumentError(std::string("malformed JSON in ") + path + ": " + e.what());
  }
  return check_request_from_json(j);
}

struct CheckOutcome {
  UnitalityReport direct;
  UnitalityReport commutator;
  double disagreement = 0.0;

  bool is_unital() const noexcept { return direct.is_unital; }
};

inline CheckOutcome run_check(const CheckRequest& req) {
  CheckOutcome out;
  out.direct = unital_defect_direct(req.unitary, req.env, req.tol);
  out.commutator = unital_defect_commutator(req.unitary, req.env, req.tol);
  out.disagreement = frobenius_distance(out.direct.defect, out.commutator.defect);
  return out;
}

// ---------------------------------------------------------------------------
// Report serialization

struct RenderOptions {
  /// Express entropies in units of k_B ln 2 (bits) instead of nats.
  bool kb_units = false;
  /// ANSI styling of PASS/FAIL markers in text output.
  bool color = false;
};

namespace detail {

inline double entropy_scale(const RenderOptions& opt) { return opt.kb_units ? 1.0 / std::log(2.0) : 1.0; }

inline const char* entropy_unit(const RenderOptions& opt) { return opt.kb_units ? "kB_ln2" : "nats"; }

inline json nullable(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace detail

inline json to_json(const UnitalityReport& r) {
  json j{{"method", to_string(r.method)},
         {"defect", to_json(r.defect)},
         {"unit_image", to_json(r.unit_image())},
         {"defect_norm", r.defect_norm},
         {"tol", r.tol},
         {"is_unital", r.is_unital}};
  if (r.per_pair_contributions) {
    json pairs = json::array();
    for (const auto& [key, value] : *r.per_pair_contributions)
      pairs.push_back({{"j", key.first}, {"j_prime", key.second}, {"value", {value.real(), value.imag()}}});
    j["per_pair_contributions"] = std::move(pairs);
  }
  return j;
}

inline json to_json(const CheckOutcome& c) {
  return {{"direct", to_json(c.direct)},
          {"commutator", to_json(c.commutator)},
          {"method_disagreement", c.disagreement},
          {"is_unital", c.is_unital()}};
}

inline json to_json(const ScenarioReport& rep, const RenderOptions& opt = {}) {
  const double es = detail::entropy_scale(opt);
  json stages = json::array();
  for (const auto& s : rep.stages)
    stages.push_back({{"label", s.label},
                      {"description", s.description},
                      {"unitary_step", s.unitary_step},
                      {"joint_state", to_json(s.joint_state.matrix())},
                      {"system_reduced", to_json(s.system_reduced.matrix())},
                      {"env_reduced", to_json(s.env_reduced.matrix())},
                      {"system_entropy", s.system_entropy.nats * es},
                      {"env_entropy", s.env_entropy.nats * es},
                      {"joint_entropy", s.joint_entropy.nats * es}});
  json channels = json::array();
  for (const auto& a : rep.unitality) {
    json blocks = json::object();
    for (const auto& b : a.reservoir_blocks) blocks[b.name] = to_json(b.matrix);
    channels.push_back({{"name", a.name},
                        {"system", a.system_label},
                        {"environment", a.env_label},
                        {"reservoir_blocks", std::move(blocks)},
                        {"expected_unit_image", to_json(a.expected_unit_image)},
                        {"direct", to_json(a.direct)},
                        {"commutator", to_json(a.commutator)},
                        {"method_disagreement", a.method_disagreement},
                        {"trace_preservation_defect", a.tp_defect}});
  }
  json verdicts = json::array();
  for (const auto& v : rep.verdicts) verdicts.push_back({{"name", v.name}, {"passed", v.passed}, {"deviation", v.deviation}});
  return {{"scenario", rep.scenario},
          {"entropy_unit", detail::entropy_unit(opt)},
          {"stages", std::move(stages)},
          {"unitality", std::move(channels)},
          {"heat_extracted", rep.heat_extracted ? json(*rep.heat_extracted) : json(nullptr)},
          {"work_bookkeeping", rep.work_bookkeeping ? json(*rep.work_bookkeeping) : json(nullptr)},
          {"verdicts", std::move(verdicts)},
          {"notes", rep.notes},
          {"passed", rep.passed()}};
}

inline json to_json(const SweepResult& r, const RenderOptions& opt = {}) {
  const double es = detail::entropy_scale(opt);
  json violations = json::array();
  for (const auto& v : r.violations) violations.push_back({{"trial_index", v.trial_index}, {"description", v.description}});
  return {{"dim_system", r.dim_system},
          {"dim_env", r.dim_reservoir},
          {"env_mode", to_string(r.env_mode)},
          {"seed", r.seed},
          {"entropy_unit", detail::entropy_unit(opt)},
          {"trials", r.trials},
          {"unital_count", r.unital_count},
          {"nonunital_count", r.nonunital_count},
          {"max_method_disagreement", r.max_method_disagreement},
          {"max_trace_preservation_defect", r.max_tp_defect},
          {"min_entropy_delta_unital", detail::nullable(r.min_entropy_delta_unital * es)},
          {"max_entropy_delta_unital", detail::nullable(r.max_entropy_delta_unital * es)},
          {"violations", std::move(violations)},
          {"passed", r.passed()}};
}

// ---------------------------------------------------------------------------
// Text rendering (9 significant digits)

inline std::string fmt_real(double x) {
  if (x == 0.0) x = 0.0;  // no "-0"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

inline std::string fmt_complex(cplx z) {
  if (z.imag() == 0.0) return fmt_real(z.real());
  return fmt_real(z.real()) + (z.imag() < 0 ? "-" : "+") + fmt_real(std::abs(z.imag())) + "i";
}

inline std::string fmt_matrix(const ComplexMatrix& m, const std::string& indent = "    ") {
  std::string out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out += indent + "[";
    for (std::size_t c = 0; c < m.cols(); ++c) out += (c ? ", " : "") + fmt_complex(m(r, c));
    out += "]\n";
  }
  return out;
}

namespace detail {

inline std::string mark(bool ok, const RenderOptions& opt) {
  if (!opt.color) return ok ? "PASS" : "FAIL";
  return ok ? "\033[32mPASS\033[0m" : "\033[31mFAIL\033[0m";
}

inline std::string render_unitality(const UnitalityReport& r, const std::string& indent) {
  std::string out = indent + to_string(r.method) + ": defect_norm " + fmt_real(r.defect_norm) + " -> " +
                    (r.is_unital ? "unital" : "non-unital") + "\n";
  out += indent + "  Phi(1) =\n" + fmt_matrix(r.unit_image(), indent + "    ");
  return out;
}

}  // namespace detail

inline std::string render_text(const ScenarioReport& rep, const RenderOptions& opt = {}) {
  const double es = detail::entropy_scale(opt);
  const std::string unit = detail::entropy_unit(opt);
  std::ostringstream os;
  os << "scenario: " << rep.scenario << "\n\nstages (entropies in " << unit << "):\n";
  for (const auto& s : rep.stages) {
    os << "  " << s.label << "  " << s.description << (s.unitary_step ? "  [unitary]" : "") << "\n";
    os << "    S(system) " << fmt_real(s.system_entropy.nats * es) << "  S(env) " << fmt_real(s.env_entropy.nats * es)
       << "  S(joint) " << fmt_real(s.joint_entropy.nats * es) << "\n";
    os << "    joint state:\n" << fmt_matrix(s.joint_state.matrix(), "      ");
  }
  os << "\nchannels:\n";
  for (const auto& a : rep.unitality) {
    os << "  " << a.name << " (system " << a.system_label << ", environment " << a.env_label << ")\n";
    for (const auto& b : a.reservoir_blocks) os << "    " << b.name << " =\n" << fmt_matrix(b.matrix, "      ");
    os << detail::render_unitality(a.direct, "    ") << detail::render_unitality(a.commutator, "    ");
    os << "    method disagreement " << fmt_real(a.method_disagreement) << ", trace-preservation defect "
       << fmt_real(a.tp_defect) << "\n";
  }
  if (rep.heat_extracted) os << "\nheat_extracted " << fmt_real(*rep.heat_extracted) << "\n";
  if (rep.work_bookkeeping) os << "work_bookkeeping " << fmt_real(*rep.work_bookkeeping) << "\n";
  os << "\nverdicts:\n";
  for (const auto& v : rep.verdicts)
    os << "  " << detail::mark(v.passed, opt) << "  " << v.name << "  (deviation " << fmt_real(v.deviation) << ")\n";
  for (const auto& n : rep.notes) os << "note: " << n << "\n";
  os << "result: " << detail::mark(rep.passed(), opt) << "\n";
  return os.str();
}

inline std::string render_text(const CheckOutcome& c, const RenderOptions& = {}) {
  std::ostringstream os;
  os << detail::render_unitality(c.direct, "") << detail::render_unitality(c.commutator, "");
  os << "method disagreement " << fmt_real(c.disagreement) << "\n";
  os << "verdict: " << (c.is_unital() ? "unital" : "non-unital") << "\n";
  return os.str();
}

inline std::string render_text(const SweepResult& r, const RenderOptions& opt = {}) {
  const double es = detail::entropy_scale(opt);
  auto opt_real = [](double x) { return std::isfinite(x) ? fmt_real(x) : std::string("n/a"); };
  std::ostringstream os;
  os << "sweep d_sys=" << r.dim_system << " d_env=" << r.dim_reservoir << " env=" << to_string(r.env_mode)
     << " seed=" << r.seed << "\n";
  os << "  trials " << r.trials << "\n";
  os << "  unital " << r.unital_count << "\n";
  os << "  non-unital " << r.nonunital_count << "\n";
  os << "  max method disagreement " << fmt_real(r.max_method_disagreement) << "\n";
  os << "  max trace-preservation defect " << fmt_real(r.max_tp_defect) << "\n";
  os << "  min entropy delta (unital, " << detail::entropy_unit(opt) << ") " << opt_real(r.min_entropy_delta_unital * es)
     << "\n";
  os << "  max entropy delta (unital, " << detail::entropy_unit(opt) << ") " << opt_real(r.max_entropy_delta_unital * es)
     << "\n";
  os << "  violations " << r.violations.size() << "\n";
  for (const auto& v : r.violations) os << "    trial " << v.trial_index << ": " << v.description << "\n";
  os << "result: " << detail::mark(r.passed(), opt) << "\n";
  return os.str();
}

}  // namespace qunital
