#pragma once

// Morse index of an Ustilovsky geodesic from conjugate-time multiplicities,
// and the comparison with the Conley-Zehnder index of the linearized flow at
// the maximum:  index_{L+} = |CZ(x_max, 1) - CZ(x_max, 0)|.

#include <cstdlib>
#include <map>
#include <optional>
#include <tuple>
#include <string>
#include <vector>

#include "czlab/crossing.hpp"
#include "czlab/hofer_models.hpp"

namespace czlab {

struct TheoremOptions {
  int steps = kDefaultSteps;
  CrossingOptions crossing;
  double degeneracy_threshold = 1e-6;  ///< sigma_min(Psi(1) - I) must exceed this * |Psi(1)|
  std::optional<double> epsilon;       ///< override for the max side
  std::optional<double> epsilon_min;   ///< override for the min side
};

/// Floer nondegeneracy: Psi(1) has no eigenvalue 1.
inline bool check_nondegenerate(const SymplecticPath& path, double threshold = 1e-6) {
  const Matrix psi = path.evaluate(1.0);
  Eigen::JacobiSVD<Matrix> svd(psi - Matrix::Identity(psi.rows(), psi.cols()));
  return svd.singularValues()(psi.rows() - 1) > threshold * spectral_norm(psi);
}

/// Half the first crossing time in (0, 1], capped at 1/2.
inline double admissible_epsilon(const SymplecticPath& path, const CrossingOptions& opt = {}) {
  const auto cs = find_crossings(path, Window{0.0, 1.0}, opt);
  if (cs.empty()) return 0.5;
  const double first = cs.front().time;
  const double spacing = path.times()[1] - path.times()[0];
  if (first < 2.0 * spacing)
    throw ResolutionError("first crossing at t = " + std::to_string(first) +
                          " is below the grid resolution; refine steps");
  return std::min(0.5, 0.5 * first);
}

template <HessianSource G>
double admissible_epsilon(const G& S, int steps = kDefaultSteps, const CrossingOptions& opt = {}) {
  return admissible_epsilon(integrate(S, 0.0, 1.0, steps), opt);
}

/// Sum of crossing multiplicities in (0, 1). Requires a nondegenerate endpoint
/// and regular crossings.
inline int morse_index(const SymplecticPath& path, const TheoremOptions& opt = {}) {
  if (!check_nondegenerate(path, opt.degeneracy_threshold))
    throw DegenerateError("not a nondegenerate Ustilovsky geodesic: degenerate at t=1");
  int index = 0;
  for (const auto& c : find_crossings(path, Window{0.0, 1.0}, opt.crossing)) {
    if (!c.regular)
      throw IrregularCrossingError("extremizer not Morse at some time (irregular crossing at t = " +
                                   std::to_string(c.time) + ")");
    if (c.time < 1.0) index += c.multiplicity;
  }
  return index;
}

template <HessianSource G>
int morse_index(const G& S, const TheoremOptions& opt = {}) {
  return morse_index(integrate(S, 0.0, 1.0, opt.steps), opt);
}

/// index(gamma_tau) for each tau: multiplicities of crossings in (0, tau).
inline std::vector<int> morse_staircase(const SymplecticPath& path, const std::vector<double>& taus,
                                        const CrossingOptions& opt = {}) {
  const auto cs = find_crossings(path, Window{0.0, path.t_end()}, opt);
  std::vector<int> out;
  out.reserve(taus.size());
  for (double tau : taus) {
    int m = 0;
    for (const auto& c : cs)
      if (c.time < tau - opt.endpoint_tolerance) m += c.multiplicity;
    out.push_back(m);
  }
  return out;
}

/// Everything computed at one extremizer (generator negative definite).
struct ExtremizerReport {
  std::vector<Crossing> crossings;
  double epsilon = 0.0;
  int morse_index = 0;
  IndexValue cz_at_epsilon;  ///< rs_halves on [0, eps]
  IndexValue cz_at_1;        ///< rs_halves on [0, 1]
  IndexValue cz_interval;    ///< open_open on (eps, 1]
  bool additive = false;     ///< cz_at_1 - cz_at_epsilon == cz_interval
  long cz_difference = 0;    ///< |cz_at_1 - cz_at_epsilon|
  double symplectic_residual = 0.0;
  double determinant_deviation = 0.0;
  double kernel_residual = 0.0;
  double endpoint_sigma = 0.0;
};

template <HessianSource G>
ExtremizerReport analyze_extremizer(const G& S, const TheoremOptions& opt = {},
                                    std::optional<double> epsilon = std::nullopt) {
  const auto path = integrate(S, 0.0, 1.0, opt.steps);
  if (!check_nondegenerate(path, opt.degeneracy_threshold))
    throw DegenerateError("degenerate at t=1: the time-1 linearized flow has eigenvalue 1");

  ExtremizerReport r;
  r.morse_index = morse_index(path, opt);
  r.crossings = find_crossings(path, Window{0.0, 1.0}, opt.crossing);
  if (epsilon) {
    if (!(*epsilon > 0.0 && *epsilon < 1.0)) throw DomainError("epsilon must lie in (0, 1)");
    if (!find_crossings(path, Window{0.0, *epsilon}, opt.crossing).empty())
      throw DomainError("epsilon " + std::to_string(*epsilon) +
                        " is not admissible: the flow has a crossing in (0, epsilon]");
    r.epsilon = *epsilon;
  } else {
    r.epsilon = admissible_epsilon(path, opt.crossing);
  }

  r.cz_at_epsilon = rs_index(path, Window{0.0, r.epsilon}, EndpointPolicy::rs_halves, opt.crossing);
  r.cz_at_1 = rs_index(path, Window{0.0, 1.0}, EndpointPolicy::rs_halves, opt.crossing);
  r.cz_interval = rs_index(path, Window{r.epsilon, 1.0}, EndpointPolicy::open_open, opt.crossing);
  const long diff = r.cz_at_1.halves - r.cz_at_epsilon.halves;
  r.additive = diff == r.cz_interval.halves;
  r.cz_difference = std::labs(diff) / 2;
  if (diff % 2 != 0) r.additive = false;

  std::tie(r.symplectic_residual, r.determinant_deviation) = path.node_residuals();
  for (const auto& c : r.crossings) r.kernel_residual = std::max(r.kernel_residual, c.kernel_residual);
  {
    const Matrix psi = path.evaluate(1.0);
    Eigen::JacobiSVD<Matrix> svd(psi - Matrix::Identity(psi.rows(), psi.cols()));
    r.endpoint_sigma = svd.singularValues()(psi.rows() - 1) / spectral_norm(psi);
  }
  return r;
}

struct IndexReport {
  std::string scenario;
  ExtremizerReport max_side;
  ExtremizerReport min_side;  ///< computed from -S_min
  int morse_index_plus = 0;
  int morse_index_minus = 0;
  int morse_index_total = 0;
  long theorem_lhs = 0;
  long theorem_rhs = 0;
  bool verdict = false;
  std::vector<std::string> diagnostics;
  std::map<std::string, double> residuals;

  double epsilon() const { return max_side.epsilon; }
  const std::vector<Crossing>& crossings_max() const { return max_side.crossings; }
  const std::vector<Crossing>& crossings_min() const { return min_side.crossings; }
  const IndexValue& cz_at_1() const { return max_side.cz_at_1; }
  const IndexValue& cz_at_epsilon() const { return max_side.cz_at_epsilon; }
  const IndexValue& cz_interval() const { return max_side.cz_interval; }
};

/// Validates the scenario, computes both sides of the identity at x_max
/// (and the analogous L- data at x_min from the negated Hessian path), and
/// runs the internal consistency checks. The verdict requires lhs == rhs and
/// every consistency check to hold.
inline IndexReport verify_theorem(const Scenario& scenario, const TheoremOptions& opt = {}) {
  if (auto violations = validate_ustilovsky(scenario); !violations.empty())
    throw ValidationError(std::move(violations));

  IndexReport rep;
  rep.scenario = scenario.name;
  rep.max_side = analyze_extremizer(scenario.s_max, opt, opt.epsilon);
  rep.min_side = analyze_extremizer(scenario.s_min.negated(), opt, opt.epsilon_min);

  rep.morse_index_plus = rep.max_side.morse_index;
  rep.morse_index_minus = rep.min_side.morse_index;
  rep.morse_index_total = rep.morse_index_plus + rep.morse_index_minus;
  rep.theorem_lhs = rep.morse_index_plus;
  rep.theorem_rhs = rep.max_side.cz_difference;

  bool ok = rep.theorem_lhs == rep.theorem_rhs;
  if (!ok)
    rep.diagnostics.push_back("Morse index " + std::to_string(rep.theorem_lhs) + " != |CZ difference| " +
                              std::to_string(rep.theorem_rhs));
  if (!rep.max_side.additive) {
    ok = false;
    rep.diagnostics.push_back("x_max: CZ(1) - CZ(eps) differs from the index over (eps, 1]");
  }
  if (!rep.min_side.additive) {
    ok = false;
    rep.diagnostics.push_back("x_min: CZ(1) - CZ(eps) differs from the index over (eps, 1]");
  }
  if (rep.min_side.morse_index != rep.min_side.cz_difference) {
    ok = false;
    rep.diagnostics.push_back("x_min: Morse index differs from |CZ difference|");
  }
  rep.verdict = ok;

  rep.residuals["symplectic_residual"] =
      std::max(rep.max_side.symplectic_residual, rep.min_side.symplectic_residual);
  rep.residuals["determinant_deviation"] =
      std::max(rep.max_side.determinant_deviation, rep.min_side.determinant_deviation);
  rep.residuals["kernel_residual"] = std::max(rep.max_side.kernel_residual, rep.min_side.kernel_residual);
  rep.residuals["endpoint_sigma_max"] = rep.max_side.endpoint_sigma;
  rep.residuals["endpoint_sigma_min"] = rep.min_side.endpoint_sigma;
  if (scenario.normalization) {
    rep.residuals["normalization_residual"] = scenario.normalization->residual;
    rep.residuals["archimedes_gap"] = scenario.normalization->archimedes_gap;
  }
  return rep;
}

}  // namespace czlab
