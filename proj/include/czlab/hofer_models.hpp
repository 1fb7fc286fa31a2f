#pragma once

// Model Ustilovsky geodesics: germ data at the extremizers plus the extremal
// value curves t -> max_M H_t, t -> min_M H_t under the mean-zero
// normalization. Hofer lengths are integrals of those curves.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/legendre.hpp>

#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "czlab/hessian_path.hpp"

namespace czlab {

/// c0 + sum_k a_k cos(2 pi k t) + b_k sin(2 pi k t) on [0, 1].
struct ValueCurve {
  double c0 = 0.0;
  std::vector<double> cos_terms;
  std::vector<double> sin_terms;

  static ValueCurve constant(double v) { return ValueCurve{v, {}, {}}; }

  double operator()(double t) const {
    double v = c0;
    const double w = 2.0 * std::numbers::pi * t;
    for (std::size_t k = 0; k < cos_terms.size(); ++k) v += cos_terms[k] * std::cos(w * double(k + 1));
    for (std::size_t k = 0; k < sin_terms.size(); ++k) v += sin_terms[k] * std::sin(w * double(k + 1));
    return v;
  }

  ValueCurve shifted(double c) const {
    ValueCurve out = *this;
    out.c0 += c;
    return out;
  }
};

/// Polynomial profile f(z) = sum_k coefficients[k] z^k.
struct Profile {
  std::vector<double> coefficients;

  double operator()(double z) const {
    double v = 0.0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) v = v * z + *it;
    return v;
  }
  double derivative(double z) const {
    double v = 0.0;
    for (std::size_t k = coefficients.size(); k-- > 1;) v = v * z + double(k) * coefficients[k];
    return v;
  }
};

struct NormalizationCertificate {
  double constant = 0.0;        ///< c with f + c of zero mean
  double residual = 0.0;        ///< |integral of (f + c) over S^2|, spherical-coordinate quadrature
  double archimedes_gap = 0.0;  ///< |c from the (theta, phi) quadrature - c from the 1D z formula|
  int quadrature_points = 0;
};

struct Scenario {
  std::string name;
  std::string model;
  Eigen::Index dim = 2;
  HessianPath s_max;  ///< Hess H_t at x_max
  HessianPath s_min;  ///< Hess H_t at x_min
  ValueCurve max_curve;
  ValueCurve min_curve;
  std::optional<NormalizationCertificate> normalization;
  bool local_model = false;
  std::map<std::string, double> metadata;
};

struct HoferLengths {
  double L = 0.0;
  double L_plus = 0.0;
  double L_minus = 0.0;
};

namespace detail {

struct GaussLegendre {
  std::vector<double> nodes, weights;
};

/// Gauss-Legendre rule on [-1, 1] from the Legendre zeros.
inline GaussLegendre gauss_legendre(int n) {
  if (n < 1) throw DomainError("quadrature needs at least one point");
  GaussLegendre rule;
  for (double x : boost::math::legendre_p_zeros<double>(n)) {
    const double dp = boost::math::legendre_p_prime(n, x);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes.push_back(x);
    rule.weights.push_back(w);
    if (x != 0.0) {
      rule.nodes.push_back(-x);
      rule.weights.push_back(w);
    }
  }
  return rule;
}

inline std::string fmt_time(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", t);
  return buf;
}

/// Mean of f(z) over the unit sphere by quadrature in (theta, phi) with area
/// element sin(phi) dphi dtheta; independent of the uniform-in-z shortcut.
inline double sphere_mean_spherical(const Profile& f, int points) {
  const auto rule = gauss_legendre(points);
  const int n_theta = 16;  // integrands are theta-independent; the rule is exact
  double total = 0.0;
  for (int j = 0; j < n_theta; ++j) {
    double inner = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double phi = 0.5 * std::numbers::pi * (rule.nodes[i] + 1.0);
      inner += rule.weights[i] * f(std::cos(phi)) * std::sin(phi);
    }
    total += inner * 0.5 * std::numbers::pi * (2.0 * std::numbers::pi / n_theta);
  }
  return total / (4.0 * std::numbers::pi);
}

inline Matrix scalar_block(double v) { return v * Matrix::Identity(2, 2); }

}  // namespace detail

/// H = f(z) on the unit sphere (area 4 pi). f must be strictly monotone with
/// f' nonvanishing on [-1, 1]; the extremizers are the poles and the
/// linearized flow there is a rotation with speed |f'(+-1)|.
inline Scenario sphere_profile_scenario(const Profile& f, int quadrature_points = 64,
                                        std::string name = "sphere_profile") {
  if (f.coefficients.empty()) throw DomainError("sphere_profile: empty profile");
  for (double c : f.coefficients)
    if (!std::isfinite(c)) throw DomainError("sphere_profile: non-finite coefficient");
  constexpr int probes = 4096;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (int i = 0; i <= probes; ++i) {
    const double d = f.derivative(-1.0 + 2.0 * double(i) / probes);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  const double scale = std::max(std::abs(lo), std::abs(hi));
  if (!(lo > 1e-12 * scale || hi < -1e-12 * scale) || scale == 0.0)
    throw DomainError("sphere_profile: f' vanishes or changes sign on [-1, 1]; extremizers are not unique Morse points");

  const auto rule = detail::gauss_legendre(quadrature_points);
  double integral = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) integral += rule.weights[i] * f(rule.nodes[i]);
  const double c = -0.5 * integral;

  NormalizationCertificate cert;
  cert.constant = c;
  cert.quadrature_points = quadrature_points;
  const double mean2d = detail::sphere_mean_spherical(f, quadrature_points);
  cert.archimedes_gap = std::abs(-mean2d - c);
  cert.residual = std::abs(4.0 * std::numbers::pi * (mean2d + c));

  const bool increasing = lo > 0;
  const double top = std::abs(f.derivative(1.0)), bottom = std::abs(f.derivative(-1.0));
  const double speed_max = increasing ? top : bottom;
  const double speed_min = increasing ? bottom : top;
  const double value_max = (increasing ? f(1.0) : f(-1.0)) + c;
  const double value_min = (increasing ? f(-1.0) : f(1.0)) + c;

  Scenario s{std::move(name),
             "sphere_profile",
             2,
             HessianPath::constant(detail::scalar_block(-speed_max), Definiteness::negative_definite),
             HessianPath::constant(detail::scalar_block(speed_min), Definiteness::positive_definite),
             ValueCurve::constant(value_max),
             ValueCurve::constant(value_min),
             cert,
             false,
             {}};
  s.metadata["pole_speed_max"] = speed_max;
  s.metadata["pole_speed_min"] = speed_min;
  s.metadata["max_at_north_pole"] = increasing ? 1.0 : 0.0;
  s.metadata["normalization_constant"] = c;
  return s;
}

/// Height function H = lambda z on the unit sphere: the S^1 rotation subgroup.
inline Scenario sphere_height_scenario(double lambda) {
  if (lambda == 0.0 || !std::isfinite(lambda))
    throw DomainError("sphere_height: lambda must be finite and nonzero (constant H is not Ustilovsky)");
  Scenario s = sphere_profile_scenario(Profile{{0.0, lambda}}, 64, "sphere_height");
  s.model = "sphere_height";
  s.metadata["lambda"] = lambda;
  return s;
}

/// Wraps local germ data at the extremizers. No manifold behind it, so no
/// normalization certificate; flagged as a local model.
inline Scenario quadratic_scenario(HessianPath s_max, HessianPath s_min, ValueCurve max_curve,
                                   ValueCurve min_curve, std::string name = "quadratic") {
  if (s_max.dim() != s_min.dim()) throw DimensionError("quadratic_scenario: S_max and S_min dimensions differ");
  if (s_max.definiteness() != Definiteness::negative_definite)
    throw DomainError("quadratic_scenario: S_max must be tagged negative_definite (Morse maximum)");
  if (s_min.definiteness() != Definiteness::positive_definite)
    throw DomainError("quadratic_scenario: S_min must be tagged positive_definite (Morse minimum)");
  for (int i = 0; i <= 256; ++i) {
    const double t = double(i) / 256.0;
    if (!(max_curve(t) > min_curve(t)))
      throw DomainError("quadratic_scenario: max and min value curves cross at t = " + detail::fmt_time(t));
  }
  const Eigen::Index d = s_max.dim();
  return Scenario{std::move(name),    "quadratic",
                  d,                  std::move(s_max),
                  std::move(s_min),   std::move(max_curve),
                  std::move(min_curve), std::nullopt,
                  true,               {}};
}

inline HoferLengths hofer_lengths(const Scenario& s) {
  using boost::math::quadrature::gauss_kronrod;
  auto integrate01 = [](const ValueCurve& c) {
    double err = 0.0;
    const double v = gauss_kronrod<double, 31>::integrate(c, 0.0, 1.0, 15, 1e-14, &err);
    if (!std::isfinite(v)) throw DomainError("hofer_lengths: value curve is not finite");
    return v;
  };
  HoferLengths h;
  h.L_plus = integrate01(s.max_curve);
  h.L_minus = -integrate01(s.min_curve);
  h.L = h.L_plus + h.L_minus;
  return h;
}

/// Ustilovsky criterion on a time grid: Morse maximum and minimum, separated
/// extremal values, and a valid normalization certificate when present.
inline std::vector<std::string> validate_ustilovsky(const Scenario& s) {
  std::vector<std::string> v;
  if (s.s_max.dim() != s.dim || s.s_min.dim() != s.dim) {
    v.push_back("dimension mismatch between scenario and Hessian paths");
    return v;
  }
  constexpr int grid = 257;
  // Reports the grid time where the definiteness margin is worst.
  auto check_definite = [&](const HessianPath& p, bool negative, const char* label) {
    double worst_margin = std::numeric_limits<double>::infinity();
    double worst_t = 0.0;
    for (int i = 0; i < grid; ++i) {
      const double t = double(i) / double(grid - 1);
      const Matrix S = p(t);
      if (!S.allFinite()) {
        v.push_back(std::string(label) + " not finite at t≈" + detail::fmt_time(t));
        return;
      }
      Eigen::SelfAdjointEigenSolver<Matrix> es(S, Eigen::EigenvaluesOnly);
      const double tol = 1e-9 * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
      const double margin = negative ? -es.eigenvalues().maxCoeff() - tol : es.eigenvalues().minCoeff() - tol;
      if (margin < worst_margin) {
        worst_margin = margin;
        worst_t = t;
      }
    }
    if (!(worst_margin > 0.0))
      v.push_back(std::string(label) + (negative ? " not negative definite" : " not positive definite") +
                  " at t≈" + detail::fmt_time(worst_t));
  };
  check_definite(s.s_max, true, "S_max");
  check_definite(s.s_min, false, "S_min");

  // Extremal values: coarse grid, then golden-section polish of the tightest gap.
  auto gap = [&](double t) { return s.max_curve(t) - s.min_curve(t); };
  constexpr int curve_grid = 1025;
  int worst = 0;
  double worst_gap = std::numeric_limits<double>::infinity();
  bool finite = true;
  for (int i = 0; i < curve_grid; ++i) {
    const double t = double(i) / double(curve_grid - 1);
    const double g = gap(t);
    if (!std::isfinite(g)) finite = false;
    if (g < worst_gap) {
      worst_gap = g;
      worst = i;
    }
  }
  if (!finite) {
    v.push_back("value curves are not finite");
  } else {
    double lo = std::max(0, worst - 1) / double(curve_grid - 1);
    double hi = std::min(curve_grid - 1, worst + 1) / double(curve_grid - 1);
    constexpr double r = 0.61803398874989484820;
    for (int it = 0; it < 100 && hi - lo > 1e-15; ++it) {
      const double x1 = hi - r * (hi - lo), x2 = lo + r * (hi - lo);
      if (gap(x1) <= gap(x2))
        hi = x2;
      else
        lo = x1;
    }
    const double t_star = 0.5 * (lo + hi);
    const double g_star = std::min(worst_gap, gap(t_star));
    const double scale = std::max({1.0, std::abs(s.max_curve(t_star)), std::abs(s.min_curve(t_star))});
    if (g_star <= 1e-9 * scale)
      v.push_back("extremal values collide at t≈" +
                  detail::fmt_time(g_star == worst_gap ? worst / double(curve_grid - 1) : t_star));
  }
  if (s.normalization && s.normalization->residual > 1e-8)
    v.push_back("normalization residual " + detail::fmt_time(s.normalization->residual) + " exceeds 1e-8");
  return v;
}

}  // namespace czlab
