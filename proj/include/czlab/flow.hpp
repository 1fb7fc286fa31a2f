#pragma once

// Linearized Hamiltonian flow Psi' = J S(t) Psi, Psi(t_start) = I, by
// fourth-order Magnus steps with two-point Gauss quadrature.

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "czlab/expm.hpp"
#include "czlab/hessian_path.hpp"
#include "czlab/symplectic.hpp"

namespace czlab {

inline constexpr int kDefaultSteps = 2048;

namespace detail {

inline Matrix checked_sample(const HessianFunction& S, double t) {
  Matrix m = S(t);
  if (m.rows() != S.dim() || m.cols() != S.dim())
    throw DimensionError("generator returned a matrix of the wrong size");
  if (!m.allFinite()) throw NumericalError("generator is not finite at t = " + std::to_string(t));
  if (asymmetry(m) > 1e-10) throw NumericalError("generator is not symmetric at t = " + std::to_string(t));
  return m;
}

/// Hamiltonian exponent J Sbar of one Magnus-4 step of length h from t0.
inline Matrix magnus4_exponent(const StandardStructure& s, const HessianFunction& S, double t0, double h) {
  constexpr double c1 = 0.5 - 0.28867513459481288225;  // 1/2 - sqrt(3)/6
  constexpr double c2 = 0.5 + 0.28867513459481288225;
  constexpr double k = 0.14433756729740644113;  // sqrt(3)/12
  const Matrix S1 = checked_sample(S, t0 + c1 * h);
  const Matrix S2 = checked_sample(S, t0 + c2 * h);
  // [A2, A1] with A = J S equals J (S2 J S1 - S1 J S2), and the bracket term is symmetric.
  Matrix Sbar = 0.5 * h * (S1 + S2) + k * h * h * (S2 * s.J * S1 - S1 * s.J * S2);
  Sbar = 0.5 * (Sbar + Sbar.transpose()).eval();
  return s.J * Sbar;
}

inline Matrix magnus4_step(const StandardStructure& s, const HessianFunction& S, double t0, double h) {
  Matrix E = expm(magnus4_exponent(s, S, t0, h));
  if (!E.allFinite()) throw NumericalError("Magnus step overflowed");
  return E;
}

}  // namespace detail

/// Spectral data of Psi at one time, as used by crossing detection.
struct NodeSpectrum {
  double sigma_min = 0.0;  ///< smallest singular value of Psi - I
  double norm = 1.0;       ///< |Psi|
  double det = 0.0;        ///< det(Psi - I)
  double speed = 0.0;      ///< |S| |Psi|, a bound on |dPsi/dt|
};

inline NodeSpectrum node_spectrum(const Matrix& psi, const Matrix& S) {
  const Eigen::Index d = psi.rows();
  const Matrix shifted = psi - Matrix::Identity(d, d);
  Eigen::JacobiSVD<Matrix> svd(shifted);
  const double norm = spectral_norm(psi);
  Eigen::SelfAdjointEigenSolver<Matrix> es(S, Eigen::EigenvaluesOnly);
  return NodeSpectrum{svd.singularValues()(d - 1), norm, shifted.determinant(),
                      es.eigenvalues().cwiseAbs().maxCoeff() * norm};
}

/// Densely evaluable path of symplectic matrices. Immutable once built.
class SymplecticPath {
 public:
  SymplecticPath(HessianFunction generator, std::vector<double> times, std::vector<Matrix> psi)
      : structure_(structure_for(generator.dim())),
        generator_(std::move(generator)),
        times_(std::move(times)),
        psi_(std::move(psi)) {
    if (times_.size() < 2 || times_.size() != psi_.size()) throw DomainError("SymplecticPath: bad node data");
    for (std::size_t i = 1; i < times_.size(); ++i)
      if (!(times_[i] > times_[i - 1])) throw DomainError("SymplecticPath: node times must increase");
  }

  Eigen::Index dim() const noexcept { return generator_.dim(); }
  double t_start() const noexcept { return times_.front(); }
  double t_end() const noexcept { return times_.back(); }
  const std::vector<double>& times() const noexcept { return times_; }
  const std::vector<Matrix>& matrices() const noexcept { return psi_; }
  const HessianFunction& generator() const noexcept { return generator_; }
  const StandardStructure& structure() const noexcept { return structure_; }

  /// Psi(t): the stored node matrix at a node, otherwise one Magnus sub-step
  /// from the nearest earlier node.
  Matrix evaluate(double t) const {
    if (!(t >= t_start() && t <= t_end()))
      throw DomainError("evaluate: t = " + std::to_string(t) + " outside [" + std::to_string(t_start()) +
                        ", " + std::to_string(t_end()) + "]");
    const auto it = std::upper_bound(times_.begin(), times_.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - times_.begin()) - 1;
    const double dt = t - times_[i];
    if (dt == 0.0) return psi_[i];
    return detail::magnus4_step(structure_, generator_, times_[i], dt) * psi_[i];
  }

  Matrix hessian(double t) const { return generator_(t); }

  /// Spectral data at t, cached: all nodes on first use, other times as queried.
  NodeSpectrum spectrum(double t) const {
    const auto it = std::lower_bound(times_.begin(), times_.end(), t);
    if (it != times_.end() && *it == t) {
      std::call_once(cache_->once, [&] {
        cache_->spectra.reserve(psi_.size());
        for (std::size_t i = 0; i < psi_.size(); ++i)
          cache_->spectra.push_back(node_spectrum(psi_[i], generator_(times_[i])));
      });
      return cache_->spectra[std::size_t(it - times_.begin())];
    }
    {
      std::lock_guard lock(cache_->mutex);
      if (auto f = cache_->off_node.find(t); f != cache_->off_node.end()) return f->second;
    }
    const NodeSpectrum sp = node_spectrum(evaluate(t), generator_(t));
    std::lock_guard lock(cache_->mutex);
    cache_->off_node.emplace(t, sp);
    return sp;
  }

  /// Memo for root refinements inside a node bracket, so repeated scans of
  /// the same path refine each bracket once.
  template <class F>
  double refine_once(double lo, double hi, double tol, int method, F&& compute) const {
    const auto key = std::make_tuple(lo, hi, tol, method);
    {
      std::lock_guard lock(cache_->mutex);
      if (auto it = cache_->refined.find(key); it != cache_->refined.end()) return it->second;
    }
    const double t = compute();
    std::lock_guard lock(cache_->mutex);
    cache_->refined.emplace(key, t);
    return t;
  }

  /// dPsi/dt = J S(t) Psi(t).
  Matrix derivative(double t) const { return structure_.J * generator_(t) * evaluate(t); }

  /// Worst node deviation from symplecticity and from det = 1.
  std::pair<double, double> node_residuals() const {
    double res = 0.0, det = 0.0;
    for (const auto& m : psi_) {
      res = std::max(res, symplectic_residual(structure_, m));
      det = std::max(det, std::abs(m.determinant() - 1.0));
    }
    return {res, det};
  }

 private:
  StandardStructure structure_;
  HessianFunction generator_;
  std::vector<double> times_;
  std::vector<Matrix> psi_;
  struct Cache {
    std::once_flag once;
    std::vector<NodeSpectrum> spectra;
    std::mutex mutex;
    std::map<std::tuple<double, double, double, int>, double> refined;
    std::map<double, NodeSpectrum> off_node;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

template <HessianSource G>
SymplecticPath integrate(const G& S, double t_start, double t_end, int steps = kDefaultSteps) {
  if (!(t_start >= 0.0 && t_start < t_end && t_end <= 1.0))
    throw DomainError("integrate: need 0 <= t_start < t_end <= 1");
  if (steps < 8) throw DomainError("integrate: steps must be >= 8");
  HessianFunction gen = [&] {
    if constexpr (std::is_same_v<G, HessianFunction>)
      return S;
    else
      return erase(S);
  }();
  const auto structure = structure_for(gen.dim());

  std::vector<double> times(static_cast<std::size_t>(steps) + 1);
  std::vector<Matrix> psi(times.size());
  const double h = (t_end - t_start) / double(steps);
  times[0] = t_start;
  psi[0] = Matrix::Identity(gen.dim(), gen.dim());
  for (int k = 0; k < steps; ++k) {
    const double t0 = t_start + double(k) * h;
    times[k + 1] = k + 1 == steps ? t_end : t_start + double(k + 1) * h;
    psi[k + 1] = detail::magnus4_step(structure, gen, t0, times[k + 1] - t0) * psi[k];
    if (!psi[k + 1].allFinite()) throw NumericalError("integrate: flow overflowed");
  }
  return SymplecticPath(std::move(gen), std::move(times), std::move(psi));
}

/// The same flow re-based at a: t -> Psi(t) Psi(a)^{-1} on [a, b].
inline SymplecticPath restrict(const SymplecticPath& path, double a, double b) {
  if (!(a >= path.t_start() && a < b && b <= path.t_end()))
    throw DomainError("restrict: need t_start <= a < b <= t_end");
  const Matrix base_inv = symplectic_inverse(path.evaluate(a));
  constexpr double gap = 1e-12;
  std::vector<double> times{a};
  std::vector<Matrix> psi{Matrix::Identity(path.dim(), path.dim())};
  for (std::size_t i = 0; i < path.times().size(); ++i) {
    const double t = path.times()[i];
    if (t > a + gap && t < b - gap) {
      times.push_back(t);
      psi.push_back(path.matrices()[i] * base_inv);
    }
  }
  times.push_back(b);
  psi.push_back(path.evaluate(b) * base_inv);
  return SymplecticPath(path.generator(), std::move(times), std::move(psi));
}

}  // namespace czlab
