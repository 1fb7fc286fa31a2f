#pragma once

// Crossings of a symplectic path with the Maslov cycle {det(Psi - I) = 0}
// and the Robbin-Salamon index they assemble into.
//
// Detection tracks sigma_min(Psi(t) - I) on the node grid. Near a regular
// crossing it behaves like |t - tau|, so crossings are usually touching zeros
// (a rotation never makes det(Psi - I) change sign); sign changes of the
// determinant are used only as additional brackets for odd-multiplicity
// crossings. Each bracket is refined by golden-section minimization (or
// bisection for sign changes) and the multiplicity is read off the singular
// values of Psi(tau) - I at the refined time.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "czlab/flow.hpp"

namespace czlab {

struct CrossingOptions {
  double trigger_threshold = 1e-3;  ///< sigma_min / |Psi| below which a grid minimum is refined
  double kernel_threshold = 1e-7;   ///< singular values below this * |Psi| span the kernel
  double form_tolerance = 1e-8;     ///< crossing-form eigenvalues below this * |S| count as zero
  double time_tolerance = 1e-13;    ///< refinement stops below this bracket width
  double endpoint_tolerance = 1e-9; ///< crossings this close to a window end belong to it
  int max_subdivision_depth = 2;    ///< local re-sampling levels before giving up
  int subdivision = 16;
};

struct Signature {
  int positive = 0;
  int negative = 0;
  int zero = 0;

  int value() const noexcept { return positive - negative; }
  bool regular() const noexcept { return zero == 0; }
  bool operator==(const Signature&) const = default;
};

struct Crossing {
  double time = 0.0;
  int multiplicity = 0;
  Matrix kernel_basis;  ///< 2n x multiplicity, orthonormal columns
  Signature signature;
  bool regular = false;
  double sigma_min = 0.0;        ///< sigma_min(Psi(tau) - I) / |Psi(tau)|
  double kernel_residual = 0.0;  ///< |(Psi - I) K| / |Psi|
  bool at_window_end = false;
};

/// Half-open time window (a, b].
struct Window {
  double a = 0.0;
  double b = 1.0;
};

enum class EndpointPolicy { open_open, rs_halves };

inline std::string to_string(EndpointPolicy p) {
  return p == EndpointPolicy::open_open ? "open_open" : "rs_halves";
}

/// Robbin-Salamon indices are half-integers; stored as a count of halves.
struct IndexValue {
  long halves = 0;
  Window interval;
  EndpointPolicy policy = EndpointPolicy::open_open;

  double value() const noexcept { return 0.5 * double(halves); }
  bool is_integer() const noexcept { return halves % 2 == 0; }
  long integer() const {
    if (!is_integer()) throw DomainError("index value " + std::to_string(value()) + " is not an integer");
    return halves / 2;
  }
};

/// Signature of v -> v^T S v restricted to span(kernel_basis).
inline Signature crossing_form(const Matrix& S, const Matrix& kernel_basis, double tolerance = 1e-8) {
  if (kernel_basis.cols() == 0) throw DomainError("crossing_form: empty kernel basis");
  if (kernel_basis.rows() != S.rows() || S.rows() != S.cols())
    throw DimensionError("crossing_form: dimension mismatch");
  const Matrix Q = kernel_basis.transpose() * S * kernel_basis;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (Q + Q.transpose()), Eigen::EigenvaluesOnly);
  const double scale = std::max(spectral_norm(S), std::numeric_limits<double>::min());
  Signature sig;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double mu = es.eigenvalues()(i);
    if (std::abs(mu) <= tolerance * scale)
      ++sig.zero;
    else if (mu > 0)
      ++sig.positive;
    else
      ++sig.negative;
  }
  return sig;
}

namespace detail {

struct GridSample {
  double t = 0.0;
  double sigma = 0.0;  // sigma_min(Psi - I)
  double norm = 1.0;   // |Psi|
  double det = 0.0;    // det(Psi - I)
  double speed = 0.0;  // |S| |Psi|
};

inline GridSample grid_sample(const SymplecticPath& path, double t) {
  const NodeSpectrum sp = path.spectrum(t);
  return GridSample{t, sp.sigma_min, sp.norm, sp.det, sp.speed};
}

inline double sigma_min_at(const SymplecticPath& path, double t) {
  const Matrix psi = path.evaluate(t);
  Eigen::JacobiSVD<Matrix> svd(psi - Matrix::Identity(psi.rows(), psi.cols()));
  return svd.singularValues()(psi.rows() - 1);
}

inline double golden_minimize(const SymplecticPath& path, double lo, double hi, double tol) {
  constexpr double inv_phi = 0.61803398874989484820;
  double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
  double f1 = sigma_min_at(path, x1), f2 = sigma_min_at(path, x2);
  while (hi - lo > tol) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = sigma_min_at(path, x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = sigma_min_at(path, x2);
    }
  }
  // V-shaped minima may sit on the bracket ends.
  double best = 0.5 * (lo + hi);
  double fbest = sigma_min_at(path, best);
  for (double x : {lo, hi}) {
    const double f = sigma_min_at(path, x);
    if (f < fbest) {
      best = x;
      fbest = f;
    }
  }
  return best;
}

inline double det_shifted(const SymplecticPath& path, double t) {
  const Matrix psi = path.evaluate(t);
  return (psi - Matrix::Identity(psi.rows(), psi.cols())).determinant();
}

inline double bisect_det(const SymplecticPath& path, double lo, double hi, double dlo, double tol) {
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double dm = det_shifted(path, mid);
    if (dm == 0.0) return mid;
    if ((dm < 0) == (dlo < 0)) {
      lo = mid;
      dlo = dm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Kernel and crossing form at a candidate time; nullopt if Psi(t) - I is
/// not singular at the kernel threshold.
inline std::optional<Crossing> analyze(const SymplecticPath& path, double t, const CrossingOptions& opt) {
  const Matrix psi = path.evaluate(t);
  const Eigen::Index d = psi.rows();
  const Matrix shifted = psi - Matrix::Identity(d, d);
  Eigen::JacobiSVD<Matrix> svd(shifted, Eigen::ComputeFullV);
  const double norm = spectral_norm(psi);
  const auto& sv = svd.singularValues();
  int m = 0;
  for (Eigen::Index i = d - 1; i >= 0 && sv(i) < opt.kernel_threshold * norm; --i) ++m;
  if (m == 0) return std::nullopt;
  Crossing c;
  c.time = t;
  c.multiplicity = m;
  c.kernel_basis = svd.matrixV().rightCols(m);
  c.signature = crossing_form(path.hessian(t), c.kernel_basis, opt.form_tolerance);
  c.regular = c.signature.regular() && c.signature.positive + c.signature.negative == m;
  c.sigma_min = sv(d - 1) / norm;
  c.kernel_residual = (shifted * c.kernel_basis).norm() / norm;
  return c;
}

inline std::vector<double> scan_grid(const SymplecticPath& path, double a, double b) {
  std::vector<double> ts{a};
  for (double t : path.times())
    if (t > a + 1e-12 && t < b - 1e-12) ts.push_back(t);
  ts.push_back(b);
  return ts;
}

inline void dedupe(std::vector<Crossing>& cs) {
  std::sort(cs.begin(), cs.end(), [](const Crossing& x, const Crossing& y) { return x.time < y.time; });
  std::vector<Crossing> out;
  for (auto& c : cs) {
    if (!out.empty() && c.time - out.back().time < 1e-8) {
      if (c.sigma_min < out.back().sigma_min) out.back() = std::move(c);
      continue;
    }
    out.push_back(std::move(c));
  }
  cs = std::move(out);
}

inline std::vector<Crossing> scan(const SymplecticPath& path, const std::vector<double>& ts,
                                  const CrossingOptions& opt, int depth) {
  std::vector<GridSample> g;
  g.reserve(ts.size());
  for (double t : ts) g.push_back(grid_sample(path, t));
  const std::size_t n = g.size();

  if (depth == 0) {
    // Screening: |d sigma / dt| <= |Psi'| <= |S| |Psi|, so a cell can only
    // hold a zero if sigma_a + sigma_b <= L h. Runs of such cells are
    // rescanned on a finer grid; the rest cannot contain crossings.
    auto may_vanish = [&](std::size_t i) {
      const double L = 1.25 * std::max(g[i].speed, g[i + 1].speed);
      return g[i].sigma + g[i + 1].sigma <= L * (g[i + 1].t - g[i].t);
    };
    std::vector<Crossing> found;
    for (std::size_t i = 0; i + 1 < n;) {
      if (!may_vanish(i)) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j + 1 < n && may_vanish(j)) ++j;
      std::vector<double> sub;
      for (std::size_t k = i; k < j; ++k)
        for (int s = 0; s < opt.subdivision; ++s)
          sub.push_back(g[k].t + (g[k + 1].t - g[k].t) * double(s) / double(opt.subdivision));
      sub.push_back(g[j].t);
      for (auto& c : scan(path, sub, opt, 1)) found.push_back(std::move(c));
      i = j;
    }
    dedupe(found);
    return found;
  }

  struct Bracket {
    std::size_t lo, hi;
    bool sign_change;
  };
  std::vector<Bracket> brackets;
  for (std::size_t i = 0; i < n; ++i) {
    const bool left_ok = i == 0 || g[i].sigma <= g[i - 1].sigma;
    const bool right_ok = i + 1 == n || g[i].sigma <= g[i + 1].sigma;
    if (!left_ok || !right_ok) continue;
    const std::size_t lo = i == 0 ? 0 : i - 1, hi = i + 1 == n ? i : i + 1;
    const double spacing = g[hi].t - g[lo].t;
    // A grid point can sit up to one spacing away from a zero of slope <= |S| |Psi|.
    const double trigger = opt.trigger_threshold * g[i].norm + 2.0 * spacing * g[i].speed;
    if (g[i].sigma < trigger) brackets.push_back({lo, hi, false});
  }
  for (std::size_t i = 0; i + 1 < n; ++i)
    if ((g[i].det < 0) != (g[i + 1].det < 0) && g[i].det != 0.0 && g[i + 1].det != 0.0)
      brackets.push_back({i, i + 1, true});

  std::vector<Crossing> found;
  for (const auto& br : brackets) {
    const double lo = g[br.lo].t, hi = g[br.hi].t;
    const double t =
        br.sign_change
            ? path.refine_once(lo, hi, opt.time_tolerance, 0,
                               [&] { return bisect_det(path, lo, hi, g[br.lo].det, opt.time_tolerance); })
            : path.refine_once(lo, hi, opt.time_tolerance, 1,
                               [&] { return golden_minimize(path, lo, hi, opt.time_tolerance); });
    if (auto c = analyze(path, t, opt)) found.push_back(std::move(*c));
  }
  dedupe(found);

  // Parity check: det(Psi - I) flips sign across a regular crossing iff its
  // multiplicity is odd. A mismatch means crossings were merged or missed.
  for (const auto& br : brackets) {
    if (br.sign_change) continue;
    const GridSample &L = g[br.lo], &R = g[br.hi];
    if (L.sigma < opt.kernel_threshold * L.norm || R.sigma < opt.kernel_threshold * R.norm) continue;
    int mult = 0;
    for (const auto& c : found)
      if (c.time >= L.t && c.time <= R.t) mult += c.multiplicity;
    const bool flips = (L.det < 0) != (R.det < 0);
    if ((mult % 2 == 1) == flips) continue;
    if (depth >= opt.max_subdivision_depth)
      throw ResolutionError("crossings near t = " + std::to_string(0.5 * (L.t + R.t)) +
                            " are closer than the grid resolution; refine steps");
    std::vector<double> sub;
    for (int k = 0; k <= opt.subdivision; ++k)
      sub.push_back(k == opt.subdivision ? R.t : L.t + (R.t - L.t) * double(k) / double(opt.subdivision));
    auto inner = scan(path, sub, opt, depth + 1);
    std::erase_if(found, [&](const Crossing& c) { return c.time >= L.t && c.time <= R.t; });
    for (auto& c : inner) found.push_back(std::move(c));
    dedupe(found);
  }
  return found;
}

}  // namespace detail

/// All crossings in the window (a, b]. A crossing within endpoint_tolerance of
/// b is returned with at_window_end set; one at a is excluded.
inline std::vector<Crossing> find_crossings(const SymplecticPath& path, Window w,
                                            const CrossingOptions& opt = {}) {
  if (!(w.a >= path.t_start() && w.a < w.b && w.b <= path.t_end()))
    throw DomainError("find_crossings: window outside the path domain");
  auto found = detail::scan(path, detail::scan_grid(path, w.a, w.b), opt, 0);
  std::vector<Crossing> out;
  for (auto& c : found) {
    if (c.time <= w.a + opt.endpoint_tolerance) continue;
    if (c.time >= w.b - opt.endpoint_tolerance) c.at_window_end = true;
    out.push_back(std::move(c));
  }
  return out;
}

/// Crossing data at a fixed time if Psi(t) has eigenvalue 1 there.
inline std::optional<Crossing> crossing_at(const SymplecticPath& path, double t, const CrossingOptions& opt = {}) {
  return detail::analyze(path, t, opt);
}

namespace detail {

inline long endpoint_halves(const SymplecticPath& path, double t, const CrossingOptions& opt) {
  auto c = crossing_at(path, t, opt);
  if (!c) return 0;
  if (!c->regular)
    throw IrregularCrossingError("irregular endpoint crossing at t = " + std::to_string(t));
  return c->signature.value();
}

}  // namespace detail

/// Robbin-Salamon index of the path over the window. open_open requires both
/// ends off the Maslov cycle; rs_halves weighs endpoint crossings by half
/// their signature.
inline IndexValue rs_index(const SymplecticPath& path, Window w, EndpointPolicy policy,
                           const CrossingOptions& opt = {}) {
  IndexValue iv;
  iv.interval = w;
  iv.policy = policy;
  if (policy == EndpointPolicy::open_open) {
    for (double t : {w.a, w.b})
      if (crossing_at(path, t, opt))
        throw EndpointCrossingError("open_open index: crossing at endpoint t = " + std::to_string(t));
  }
  for (const auto& c : find_crossings(path, w, opt)) {
    if (c.at_window_end) continue;  // accounted for by the endpoint rule below
    if (!c.regular)
      throw IrregularCrossingError("irregular crossing at t = " + std::to_string(c.time) +
                                   "; the index is undefined without perturbation");
    iv.halves += 2L * c.signature.value();
  }
  if (policy == EndpointPolicy::rs_halves)
    iv.halves += detail::endpoint_halves(path, w.a, opt) + detail::endpoint_halves(path, w.b, opt);
  return iv;
}

struct ConcatenationParts {
  IndexValue whole, left, right;
  bool additive = false;
};

/// Splits w at m and compares the index of the whole with the sum of parts.
inline ConcatenationParts concatenation_parts(const SymplecticPath& path, double m, Window w,
                                              EndpointPolicy policy = EndpointPolicy::rs_halves,
                                              const CrossingOptions& opt = {}) {
  if (!(m >= w.a && m <= w.b)) throw DomainError("concatenation_check: split point outside the window");
  if (m > w.a && m < w.b && crossing_at(path, m, opt))
    throw DomainError("concatenation_check: split point " + std::to_string(m) + " is a crossing time");
  ConcatenationParts parts;
  parts.whole = rs_index(path, w, policy, opt);
  auto side = [&](double a, double b) {
    if (a == b) return IndexValue{0, Window{a, b}, policy};
    return rs_index(path, Window{a, b}, policy, opt);
  };
  parts.left = side(w.a, m);
  parts.right = side(m, w.b);
  parts.additive = parts.whole.halves == parts.left.halves + parts.right.halves;
  return parts;
}

inline bool concatenation_check(const SymplecticPath& path, double m, Window w,
                                EndpointPolicy policy = EndpointPolicy::rs_halves,
                                const CrossingOptions& opt = {}) {
  return concatenation_parts(path, m, w, policy, opt).additive;
}

inline bool concatenation_check(const SymplecticPath& path, double m) {
  return concatenation_check(path, m, Window{path.t_start(), path.t_end()});
}

/// Index of a planar path from its lifted rotation angle.
///
/// Elliptic Psi has eigenvalues e^{+-i phi}; the sign of omega(e1, Psi e1)
/// picks the orientation, giving an angle theta mod 2 pi that is lifted
/// continuously along the nodes. Hyperbolic stretches sit at theta = 2 pi k
/// (positive trace) or pi (2k + 1). With N(theta) = 2k on the cycle value
/// 2 pi k and 2 floor(theta / 2 pi) + 1 otherwise, the index over the window
/// is N(theta(b)) - N(theta(a)). For open_open, theta(a) is taken just after a.
inline IndexValue planar_winding_index(const SymplecticPath& path, Window w,
                                       EndpointPolicy policy = EndpointPolicy::open_open) {
  if (path.dim() != 2) throw DimensionError("planar_winding_index needs a planar path");
  if (!(w.a >= path.t_start() && w.a < w.b && w.b <= path.t_end()))
    throw DomainError("planar_winding_index: window outside the path domain");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  auto raw_angle = [](const Matrix& M) {
    const double half_trace = 0.5 * M.trace();
    if (half_trace >= 1.0) return 0.0;
    if (half_trace <= -1.0) return std::numbers::pi;
    const double phi = std::acos(half_trace);
    return M(1, 0) < 0 ? -phi : phi;
  };
  auto on_cycle = [](const Matrix& M) {
    return (M - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-9 * std::max(1.0, M.norm());
  };
  auto parabolic = [&](const Matrix& M) { return !on_cycle(M) && std::abs(0.5 * M.trace() - 1.0) < 1e-9; };

  auto ts = detail::scan_grid(path, w.a, w.b);
  std::vector<double> theta;
  theta.reserve(ts.size());
  for (double t : ts) {
    const double raw = raw_angle(path.evaluate(t));
    if (theta.empty()) {
      theta.push_back(raw);
      continue;
    }
    const double prev = theta.back();
    theta.push_back(raw + two_pi * std::round((prev - raw) / two_pi));
  }

  auto N = [&](double th) -> long {
    const double k = std::round(th / two_pi);
    if (std::abs(th - k * two_pi) < 1e-9) return 2L * long(k);
    return 2L * long(std::floor(th / two_pi)) + 1;
  };
  const Matrix psi_a = path.evaluate(w.a), psi_b = path.evaluate(w.b);
  if (parabolic(psi_a) || parabolic(psi_b))
    throw DomainError("planar_winding_index: parabolic endpoint is outside the oracle's scope");

  long n_a = N(theta.front());
  if (policy == EndpointPolicy::open_open && on_cycle(psi_a)) {
    // value just after a
    const double t_next = ts.size() > 1 ? ts[1] : w.b;
    const double after = raw_angle(path.evaluate(w.a + 1e-6 * (t_next - w.a)));
    n_a = N(after + two_pi * std::round((theta.front() - after) / two_pi));
  }
  const long n_b = N(theta.back());
  IndexValue iv;
  iv.interval = w;
  iv.policy = policy;
  iv.halves = 2L * (n_b - n_a);
  return iv;
}

}  // namespace czlab
