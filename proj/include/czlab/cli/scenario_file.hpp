#pragma once

// Scenario documents (JSON, schema_version 1).
//
//   {
//     "schema_version": 1,
//     "name": "sphere-7",
//     "model": "sphere_height" | "sphere_profile" | "quadratic",
//     "parameters": { ... model specific ... },
//     "solver": { "steps": 2048, "kernel_threshold": 1e-7, ... },   optional
//     "output": { "include_kernels": false }                          optional
//   }
//
// sphere_height:  { "lambda": 7 }
// sphere_profile: { "coefficients": [c0, c1, ...], "quadrature_points": 64 }
// quadratic:      { "s_max": <path>, "s_min": <path>, "max_curve": <curve>, "min_curve": <curve> }
//
// <path>   = { "kind": "constant", "matrix": <m> }
//          | { "kind": "fourier", "s0": <m>, "cos": [<m>...], "sin": [<m>...] }
//          | { "kind": "sampled", "samples": [<m>...] }
//            each optionally with "definiteness"; defaults follow the role.
// <m>      = [[row], ...] | { "scalar": s, "dim": d } | { "diagonal": [...] }
// <curve>  = number | { "c0": x, "cos": [...], "sin": [...] }

#include <json.hpp>

#include <cstdlib>
#include <optional>
#include <set>
#include <string>

#include "czlab/hofer_models.hpp"
#include "czlab/index_theorem.hpp"

namespace czlab::cli {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kStepsEnv = "CZLAB_STEPS";

struct OutputOptions {
  bool include_kernels = false;
};

struct ScenarioFile {
  json document;  ///< as parsed, for provenance and sweeps
  std::string name;
  std::string model;
  TheoremOptions solver;
  OutputOptions output;
};

namespace detail {

inline void expect_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  for (const auto& [k, _] : obj.items())
    if (!allowed.count(k)) throw ParseError(where + ": unknown field '" + k + "'");
}

inline double number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ParseError(where + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(where + ": not finite");
  return v;
}

inline int integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ParseError(where + ": expected an integer");
  return j.get<int>();
}

inline std::vector<double> numbers(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline Matrix parse_matrix(const json& j, const std::string& where) {
  if (j.is_object()) {
    if (j.contains("scalar")) {
      expect_keys(j, {"scalar", "dim"}, where);
      if (!j.contains("dim")) throw ParseError(where + ": 'scalar' needs 'dim'");
      const int d = integer(j["dim"], where + ".dim");
      if (d < 2 || d % 2) throw ParseError(where + ".dim: must be even and >= 2");
      return number(j["scalar"], where + ".scalar") * Matrix::Identity(d, d);
    }
    if (j.contains("diagonal")) {
      expect_keys(j, {"diagonal"}, where);
      const auto diag = numbers(j["diagonal"], where + ".diagonal");
      return Eigen::Map<const Vector>(diag.data(), Eigen::Index(diag.size())).asDiagonal();
    }
    throw ParseError(where + ": matrix object needs 'scalar' or 'diagonal'");
  }
  if (!j.is_array() || j.empty()) throw ParseError(where + ": expected a matrix");
  const auto rows = Eigen::Index(j.size());
  Matrix m(rows, rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto row = numbers(j[std::size_t(r)], where + "[" + std::to_string(r) + "]");
    if (Eigen::Index(row.size()) != rows) throw ParseError(where + ": matrix must be square");
    for (Eigen::Index c = 0; c < rows; ++c) m(r, c) = row[std::size_t(c)];
  }
  return m;
}

inline std::vector<Matrix> parse_matrices(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array of matrices");
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_matrix(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline Definiteness parse_definiteness(const std::string& s, const std::string& where) {
  if (s == "negative_definite") return Definiteness::negative_definite;
  if (s == "positive_definite") return Definiteness::positive_definite;
  if (s == "indefinite") return Definiteness::indefinite;
  throw ParseError(where + ": unknown definiteness '" + s + "'");
}

inline HessianPath parse_path(const json& j, Definiteness role, const std::string& where) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw ParseError(where + ": Hessian path needs a string 'kind'");
  const std::string kind = j["kind"];
  Definiteness tag = role;
  if (j.contains("definiteness")) {
    if (!j["definiteness"].is_string()) throw ParseError(where + ".definiteness: expected a string");
    tag = parse_definiteness(j["definiteness"], where + ".definiteness");
  }
  try {
    if (kind == "constant") {
      expect_keys(j, {"kind", "definiteness", "matrix"}, where);
      if (!j.contains("matrix")) throw ParseError(where + ": constant path needs 'matrix'");
      return HessianPath::constant(parse_matrix(j["matrix"], where + ".matrix"), tag);
    }
    if (kind == "fourier") {
      expect_keys(j, {"kind", "definiteness", "s0", "cos", "sin"}, where);
      if (!j.contains("s0")) throw ParseError(where + ": fourier path needs 's0'");
      return HessianPath::fourier(parse_matrix(j["s0"], where + ".s0"),
                                  j.contains("cos") ? parse_matrices(j["cos"], where + ".cos") : std::vector<Matrix>{},
                                  j.contains("sin") ? parse_matrices(j["sin"], where + ".sin") : std::vector<Matrix>{},
                                  tag);
    }
    if (kind == "sampled") {
      expect_keys(j, {"kind", "definiteness", "samples"}, where);
      if (!j.contains("samples")) throw ParseError(where + ": sampled path needs 'samples'");
      return HessianPath::sampled(parse_matrices(j["samples"], where + ".samples"), tag);
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(where + ": " + e.what());
  }
  throw ParseError(where + ": unknown path kind '" + kind + "'");
}

inline ValueCurve parse_curve(const json& j, const std::string& where) {
  if (j.is_number()) return ValueCurve::constant(number(j, where));
  expect_keys(j, {"c0", "cos", "sin"}, where);
  ValueCurve c;
  if (j.contains("c0")) c.c0 = number(j["c0"], where + ".c0");
  if (j.contains("cos")) c.cos_terms = numbers(j["cos"], where + ".cos");
  if (j.contains("sin")) c.sin_terms = numbers(j["sin"], where + ".sin");
  return c;
}

}  // namespace detail

/// Default step count: CZLAB_STEPS if set, else the library default.
inline int default_steps() {
  if (const char* env = std::getenv(kStepsEnv)) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 8 && v <= 1'000'000) return int(v);
    throw ParseError(std::string(kStepsEnv) + ": expected an integer in [8, 1000000], got '" + env + "'");
  }
  return kDefaultSteps;
}

/// Structural parse: schema, model name, solver and output blocks. Model
/// parameters are checked when the scenario is built.
inline ScenarioFile parse_scenario_document(const json& doc) {
  using namespace detail;
  expect_keys(doc, {"schema_version", "name", "model", "parameters", "solver", "output"}, "scenario");
  if (!doc.contains("schema_version")) throw ParseError("scenario: missing schema_version");
  if (integer(doc["schema_version"], "schema_version") != kSchemaVersion)
    throw ParseError("scenario: unsupported schema_version " + doc["schema_version"].dump());
  if (!doc.contains("model") || !doc["model"].is_string()) throw ParseError("scenario: missing model");
  if (!doc.contains("parameters")) throw ParseError("scenario: missing parameters block");

  ScenarioFile f;
  f.document = doc;
  f.model = doc["model"];
  if (f.model != "sphere_height" && f.model != "sphere_profile" && f.model != "quadratic")
    throw ParseError("scenario: unknown model '" + f.model + "'");
  f.name = doc.contains("name") ? doc["name"].get<std::string>() : f.model;

  f.solver.steps = default_steps();
  if (doc.contains("solver")) {
    const json& s = doc["solver"];
    expect_keys(s, {"steps", "trigger_threshold", "kernel_threshold", "form_tolerance", "degeneracy_threshold",
                    "epsilon", "epsilon_min", "max_subdivision_depth"},
                "solver");
    if (s.contains("steps")) {
      f.solver.steps = integer(s["steps"], "solver.steps");
      if (f.solver.steps < 8) throw ParseError("solver.steps: must be >= 8");
    }
    if (s.contains("trigger_threshold")) f.solver.crossing.trigger_threshold = number(s["trigger_threshold"], "solver.trigger_threshold");
    if (s.contains("kernel_threshold")) f.solver.crossing.kernel_threshold = number(s["kernel_threshold"], "solver.kernel_threshold");
    if (s.contains("form_tolerance")) f.solver.crossing.form_tolerance = number(s["form_tolerance"], "solver.form_tolerance");
    if (s.contains("degeneracy_threshold")) f.solver.degeneracy_threshold = number(s["degeneracy_threshold"], "solver.degeneracy_threshold");
    if (s.contains("max_subdivision_depth")) f.solver.crossing.max_subdivision_depth = integer(s["max_subdivision_depth"], "solver.max_subdivision_depth");
    if (s.contains("epsilon")) f.solver.epsilon = number(s["epsilon"], "solver.epsilon");
    if (s.contains("epsilon_min")) f.solver.epsilon_min = number(s["epsilon_min"], "solver.epsilon_min");
  }
  if (doc.contains("output")) {
    expect_keys(doc["output"], {"include_kernels"}, "output");
    if (doc["output"].contains("include_kernels")) {
      if (!doc["output"]["include_kernels"].is_boolean()) throw ParseError("output.include_kernels: expected a boolean");
      f.output.include_kernels = doc["output"]["include_kernels"];
    }
  }
  return f;
}

inline ScenarioFile parse_scenario_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed scenario document: ") + e.what());
  }
  return parse_scenario_document(doc);
}

/// Builds the Scenario. Parameter type errors raise ParseError; values the
/// model rejects (lambda = 0, wrong definiteness, ...) raise DomainError.
inline Scenario build_scenario(const ScenarioFile& f) {
  using namespace detail;
  const json& p = f.document["parameters"];
  Scenario s = [&]() -> Scenario {
    if (f.model == "sphere_height") {
      expect_keys(p, {"lambda"}, "parameters");
      if (!p.contains("lambda")) throw ParseError("parameters: sphere_height needs 'lambda'");
      return sphere_height_scenario(number(p["lambda"], "parameters.lambda"));
    }
    if (f.model == "sphere_profile") {
      expect_keys(p, {"coefficients", "quadrature_points"}, "parameters");
      if (!p.contains("coefficients")) throw ParseError("parameters: sphere_profile needs 'coefficients'");
      const int q = p.contains("quadrature_points") ? integer(p["quadrature_points"], "parameters.quadrature_points") : 64;
      if (q < 2) throw ParseError("parameters.quadrature_points: must be >= 2");
      return sphere_profile_scenario(Profile{numbers(p["coefficients"], "parameters.coefficients")}, q);
    }
    expect_keys(p, {"s_max", "s_min", "max_curve", "min_curve"}, "parameters");
    for (const char* k : {"s_max", "s_min", "max_curve", "min_curve"})
      if (!p.contains(k)) throw ParseError(std::string("parameters: quadratic needs '") + k + "'");
    return quadratic_scenario(parse_path(p["s_max"], Definiteness::negative_definite, "parameters.s_max"),
                              parse_path(p["s_min"], Definiteness::positive_definite, "parameters.s_min"),
                              parse_curve(p["max_curve"], "parameters.max_curve"),
                              parse_curve(p["min_curve"], "parameters.min_curve"));
  }();
  s.name = f.name;
  return s;
}

}  // namespace czlab::cli
