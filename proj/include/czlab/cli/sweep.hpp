#pragma once

#include <algorithm>
#include <cstdio>
#include <future>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "czlab/cli/report.hpp"

namespace czlab::cli {

struct SweepRow {
  double value = 0.0;
  std::string status;  ///< ok | degenerate | invalid | error
  std::string message;
  int morse_index_plus = 0;
  int morse_index_minus = 0;
  int morse_index_total = 0;
  long cz_at_epsilon = 0;  ///< halves
  long cz_at_1 = 0;        ///< halves
  long cz_interval = 0;    ///< halves
  long theorem_lhs = 0;
  long theorem_rhs = 0;
  bool verdict = false;
};

inline const std::vector<std::string>& sweep_parameters() {
  static const std::vector<std::string> names{"lambda", "steps", "scale"};
  return names;
}

inline ValueCurve scaled_curve(const ValueCurve& c, double k) {
  ValueCurve out = c;
  out.c0 *= k;
  for (auto& a : out.cos_terms) a *= k;
  for (auto& b : out.sin_terms) b *= k;
  return out;
}

/// Scenario and solver settings for one sweep value.
inline std::pair<Scenario, TheoremOptions> sweep_point(const ScenarioFile& base, const std::string& parameter,
                                                       double value) {
  ScenarioFile f = base;
  if (parameter == "lambda") {
    if (f.model != "sphere_height") throw DomainError("parameter 'lambda' needs a sphere_height scenario");
    f.document["parameters"]["lambda"] = value;
    return {build_scenario(f), f.solver};
  }
  if (parameter == "steps") {
    f.solver.steps = int(std::lround(value));
    if (f.solver.steps < 8) throw DomainError("steps must be >= 8");
    return {build_scenario(f), f.solver};
  }
  if (parameter == "scale") {
    if (!(value > 0)) throw DomainError("scale must be positive");
    Scenario s = build_scenario(f);
    s.s_max = s.s_max.scaled(value);
    s.s_min = s.s_min.scaled(value);
    s.max_curve = scaled_curve(s.max_curve, value);
    s.min_curve = scaled_curve(s.min_curve, value);
    return {std::move(s), f.solver};
  }
  throw DomainError("unknown sweep parameter '" + parameter + "'");
}

inline SweepRow evaluate_sweep_point(const ScenarioFile& base, const std::string& parameter, double value) {
  SweepRow row;
  row.value = value;
  try {
    auto [scenario, solver] = sweep_point(base, parameter, value);
    const auto rep = verify_theorem(scenario, solver);
    row.status = "ok";
    row.morse_index_plus = rep.morse_index_plus;
    row.morse_index_minus = rep.morse_index_minus;
    row.morse_index_total = rep.morse_index_total;
    row.cz_at_epsilon = rep.max_side.cz_at_epsilon.halves;
    row.cz_at_1 = rep.max_side.cz_at_1.halves;
    row.cz_interval = rep.max_side.cz_interval.halves;
    row.theorem_lhs = rep.theorem_lhs;
    row.theorem_rhs = rep.theorem_rhs;
    row.verdict = rep.verdict;
  } catch (const DegenerateError& e) {
    row.status = "degenerate";
    row.message = e.what();
  } catch (const ValidationError& e) {
    row.status = "invalid";
    row.message = e.what();
  } catch (const DomainError& e) {
    row.status = "invalid";
    row.message = e.what();
  } catch (const Error& e) {
    row.status = "error";
    row.message = e.what();
  }
  return row;
}

/// count evenly spaced values in [from, to]; rows come back in parameter
/// order whatever the completion order.
inline std::vector<SweepRow> run_sweep(const ScenarioFile& base, const std::string& parameter, double from,
                                       double to, int count) {
  if (count < 2) throw DomainError("sweep count must be >= 2");
  if (std::find(sweep_parameters().begin(), sweep_parameters().end(), parameter) == sweep_parameters().end())
    throw DomainError("unknown sweep parameter '" + parameter + "'");
  if (parameter == "lambda" && base.model != "sphere_height")
    throw DomainError("parameter 'lambda' needs a sphere_height scenario");

  std::vector<double> values(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) values[i] = i + 1 == count ? to : from + (to - from) * double(i) / double(count - 1);

  std::vector<SweepRow> rows(values.size());
  const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  for (std::size_t begin = 0; begin < values.size(); begin += workers) {
    std::vector<std::future<SweepRow>> batch;
    const std::size_t end = std::min(values.size(), begin + workers);
    for (std::size_t i = begin; i < end; ++i)
      batch.push_back(std::async(std::launch::async, [&, i] { return evaluate_sweep_point(base, parameter, values[i]); }));
    for (std::size_t i = begin; i < end; ++i) rows[i] = batch[i - begin].get();
  }
  return rows;
}

inline std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string sweep_csv(const std::vector<SweepRow>& rows, const std::string& parameter) {
  std::ostringstream out;
  out << "parameter,value,status,morse_index_plus,morse_index_minus,morse_index_total,"
         "cz_at_epsilon,cz_at_1,cz_interval,theorem_lhs,theorem_rhs,verdict\n";
  for (const auto& r : rows) {
    out << parameter << ',' << format_value(r.value) << ',' << r.status;
    if (r.status == "ok") {
      out << ',' << r.morse_index_plus << ',' << r.morse_index_minus << ',' << r.morse_index_total << ','
          << format_halves(r.cz_at_epsilon) << ',' << format_halves(r.cz_at_1) << ','
          << format_halves(r.cz_interval) << ',' << r.theorem_lhs << ',' << r.theorem_rhs << ','
          << (r.verdict ? "pass" : "fail");
    } else {
      out << ",,,,,,,,,";
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace czlab::cli
