#pragma once

#include <json.hpp>

#include <string>

#include "czlab/cli/scenario_file.hpp"

namespace czlab::cli {

inline std::string format_halves(long halves) {
  if (halves % 2 == 0) return std::to_string(halves / 2);
  const long whole = halves / 2;  // truncates toward zero
  return (halves < 0 && whole == 0 ? "-" : "") + std::to_string(whole) + ".5";
}

inline json to_json(const IndexValue& v) {
  return json{{"value", v.value()},
              {"halves", v.halves},
              {"interval", {v.interval.a, v.interval.b}},
              {"policy", to_string(v.policy)}};
}

inline json to_json(const Crossing& c, bool include_kernel) {
  json j{{"time", c.time},
         {"multiplicity", c.multiplicity},
         {"signature", {c.signature.positive, c.signature.negative}},
         {"regular", c.regular},
         {"sigma_min", c.sigma_min}};
  if (include_kernel) {
    json cols = json::array();
    for (Eigen::Index k = 0; k < c.kernel_basis.cols(); ++k) {
      json col = json::array();
      for (Eigen::Index i = 0; i < c.kernel_basis.rows(); ++i) col.push_back(c.kernel_basis(i, k));
      cols.push_back(col);
    }
    j["kernel_basis"] = cols;
  }
  return j;
}

inline json to_json(const std::vector<Crossing>& cs, bool include_kernel) {
  json out = json::array();
  for (const auto& c : cs) out.push_back(to_json(c, include_kernel));
  return out;
}

inline json to_json(const IndexReport& r, bool include_kernels = false) {
  json j;
  j["scenario"] = r.scenario;
  j["epsilon"] = r.max_side.epsilon;
  j["epsilon_min"] = r.min_side.epsilon;
  j["crossings_max"] = to_json(r.max_side.crossings, include_kernels);
  j["crossings_min"] = to_json(r.min_side.crossings, include_kernels);
  j["morse_index_plus"] = r.morse_index_plus;
  j["morse_index_minus"] = r.morse_index_minus;
  j["morse_index_total"] = r.morse_index_total;
  j["cz_at_epsilon"] = to_json(r.max_side.cz_at_epsilon);
  j["cz_at_1"] = to_json(r.max_side.cz_at_1);
  j["cz_interval"] = to_json(r.max_side.cz_interval);
  j["min_side"] = {{"cz_at_epsilon", to_json(r.min_side.cz_at_epsilon)},
                   {"cz_at_1", to_json(r.min_side.cz_at_1)},
                   {"cz_interval", to_json(r.min_side.cz_interval)}};
  j["theorem_lhs"] = r.theorem_lhs;
  j["theorem_rhs"] = r.theorem_rhs;
  j["verdict"] = r.verdict ? "pass" : "fail";
  j["diagnostics"] = r.diagnostics;
  j["residuals"] = r.residuals;
  return j;
}

inline json solver_json(const TheoremOptions& o) {
  json j{{"steps", o.steps},
         {"trigger_threshold", o.crossing.trigger_threshold},
         {"kernel_threshold", o.crossing.kernel_threshold},
         {"form_tolerance", o.crossing.form_tolerance},
         {"degeneracy_threshold", o.degeneracy_threshold},
         {"max_subdivision_depth", o.crossing.max_subdivision_depth}};
  j["epsilon"] = o.epsilon ? json(*o.epsilon) : json(nullptr);
  j["epsilon_min"] = o.epsilon_min ? json(*o.epsilon_min) : json(nullptr);
  return j;
}

/// Report document. Everything except provenance.wall_time_seconds is a pure
/// function of the scenario document and solver settings.
inline json make_report_document(const ScenarioFile& file, const Scenario& scenario, const IndexReport& report,
                                 const std::string& input_sha256, double wall_time_seconds) {
  const auto lengths = hofer_lengths(scenario);
  json j;
  j["schema_version"] = kSchemaVersion;
  j["scenario"] = {{"name", scenario.name},
                   {"model", scenario.model},
                   {"dim", scenario.dim},
                   {"local_model", scenario.local_model},
                   {"metadata", scenario.metadata}};
  j["report"] = to_json(report, file.output.include_kernels);
  j["hofer_lengths"] = {{"L", lengths.L}, {"L_plus", lengths.L_plus}, {"L_minus", lengths.L_minus}};
  j["provenance"] = {{"input_sha256", input_sha256},
                     {"library_version", kVersion},
                     {"solver", solver_json(file.solver)},
                     {"wall_time_seconds", wall_time_seconds}};
  return j;
}

}  // namespace czlab::cli
