#pragma once

// Time-dependent symmetric generators S(t), t in [0, 1]: the Hessian of H_t
// at a fixed extremizer.

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>

#include <concepts>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "czlab/symplectic.hpp"

namespace czlab {

enum class Definiteness { negative_definite, positive_definite, indefinite };

inline std::string to_string(Definiteness d) {
  switch (d) {
    case Definiteness::negative_definite: return "negative_definite";
    case Definiteness::positive_definite: return "positive_definite";
    case Definiteness::indefinite: return "indefinite";
  }
  return "indefinite";
}

inline Definiteness flipped(Definiteness d) {
  switch (d) {
    case Definiteness::negative_definite: return Definiteness::positive_definite;
    case Definiteness::positive_definite: return Definiteness::negative_definite;
    default: return d;
  }
}

/// Anything that evaluates a symmetric 2n x 2n matrix at a time t.
template <class G>
concept HessianSource = requires(const G& g, double t) {
  { g(t) } -> std::convertible_to<Matrix>;
  { g.dim() } -> std::convertible_to<Eigen::Index>;
};

/// Type-erased generator, also handy for ad-hoc generators in tests.
struct HessianFunction {
  Eigen::Index d = 0;
  std::function<Matrix(double)> f;

  Matrix operator()(double t) const { return f(t); }
  Eigen::Index dim() const { return d; }
};

template <HessianSource G>
HessianFunction erase(G g) {
  const Eigen::Index d = g.dim();
  return HessianFunction{d, [g = std::move(g)](double t) { return Matrix(g(t)); }};
}

class HessianPath {
 public:
  enum class Kind { constant, fourier, sampled };

  static HessianPath constant(Matrix S, Definiteness tag = Definiteness::indefinite) {
    HessianPath p;
    p.kind_ = Kind::constant;
    p.tag_ = tag;
    p.s0_ = std::move(S);
    p.check_matrix(p.s0_, "constant");
    p.dim_ = p.s0_.rows();
    return p;
  }

  /// s0 + sum_k cos_terms[k-1] cos(2 pi k t) + sin_terms[k-1] sin(2 pi k t).
  static HessianPath fourier(Matrix s0, std::vector<Matrix> cos_terms, std::vector<Matrix> sin_terms,
                             Definiteness tag = Definiteness::indefinite) {
    HessianPath p;
    p.kind_ = Kind::fourier;
    p.tag_ = tag;
    p.s0_ = std::move(s0);
    p.check_matrix(p.s0_, "fourier s0");
    p.dim_ = p.s0_.rows();
    p.cos_ = std::move(cos_terms);
    p.sin_ = std::move(sin_terms);
    for (const auto& m : p.cos_) p.check_matrix(m, "fourier cosine term", p.dim_);
    for (const auto& m : p.sin_) p.check_matrix(m, "fourier sine term", p.dim_);
    return p;
  }

  /// Uniform samples on [0, 1] (first at 0, last at 1), cubic B-spline per
  /// entry. At least 5 samples.
  static HessianPath sampled(std::vector<Matrix> samples, Definiteness tag = Definiteness::indefinite) {
    if (samples.size() < 5) throw DomainError("sampled HessianPath needs at least 5 samples");
    HessianPath p;
    p.kind_ = Kind::sampled;
    p.tag_ = tag;
    p.check_matrix(samples.front(), "sample");
    p.dim_ = samples.front().rows();
    for (const auto& m : samples) p.check_matrix(m, "sample", p.dim_);
    p.samples_ = std::move(samples);
    p.build_splines();
    return p;
  }

  Matrix operator()(double t) const {
    switch (kind_) {
      case Kind::constant: return s0_;
      case Kind::fourier: {
        Matrix S = s0_;
        const double w = 2.0 * std::numbers::pi * t;
        for (std::size_t k = 0; k < cos_.size(); ++k) S += std::cos(w * double(k + 1)) * cos_[k];
        for (std::size_t k = 0; k < sin_.size(); ++k) S += std::sin(w * double(k + 1)) * sin_[k];
        return S;
      }
      case Kind::sampled: {
        Matrix S(dim_, dim_);
        for (Eigen::Index i = 0; i < dim_; ++i)
          for (Eigen::Index j = i; j < dim_; ++j) {
            const double v = (*splines_)[index(i, j)](t);
            S(i, j) = v;
            S(j, i) = v;
          }
        return S;
      }
    }
    return s0_;
  }

  Eigen::Index dim() const noexcept { return dim_; }
  Kind kind() const noexcept { return kind_; }
  Definiteness definiteness() const noexcept { return tag_; }

  const Matrix& s0() const noexcept { return s0_; }
  const std::vector<Matrix>& cos_terms() const noexcept { return cos_; }
  const std::vector<Matrix>& sin_terms() const noexcept { return sin_; }
  const std::vector<Matrix>& samples() const noexcept { return samples_; }

  /// t -> c S(t). A negative factor flips the definiteness tag.
  HessianPath scaled(double c) const {
    return map([c](const Matrix& m) { return Matrix(c * m); }, c < 0 ? flipped(tag_) : tag_);
  }

  HessianPath negated() const { return scaled(-1.0); }

  /// t -> L^T S(t) L; congruence keeps definiteness.
  HessianPath congruent(const Matrix& L) const {
    if (L.rows() != dim_ || L.cols() != dim_) throw DimensionError("congruent: dimension mismatch");
    return map([&L](const Matrix& m) { return Matrix(L.transpose() * m * L); }, tag_);
  }

  /// Eigenvalue extremes of S(t) over a uniform grid of `points` times.
  std::pair<double, double> eigenvalue_range(int points = 257) const {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int i = 0; i < points; ++i) {
      const double t = points == 1 ? 0.0 : double(i) / double(points - 1);
      Eigen::SelfAdjointEigenSolver<Matrix> es((*this)(t), Eigen::EigenvaluesOnly);
      lo = std::min(lo, es.eigenvalues().minCoeff());
      hi = std::max(hi, es.eigenvalues().maxCoeff());
    }
    return {lo, hi};
  }

  /// First grid time where the definiteness tag fails by margin delta.
  std::optional<double> definiteness_violation(double delta = 1e-9, int points = 257) const {
    if (tag_ == Definiteness::indefinite) return std::nullopt;
    for (int i = 0; i < points; ++i) {
      const double t = double(i) / double(points - 1);
      Eigen::SelfAdjointEigenSolver<Matrix> es((*this)(t), Eigen::EigenvaluesOnly);
      const auto& ev = es.eigenvalues();
      if (tag_ == Definiteness::negative_definite && ev.maxCoeff() >= -delta) return t;
      if (tag_ == Definiteness::positive_definite && ev.minCoeff() <= delta) return t;
    }
    return std::nullopt;
  }

 private:
  using Spline = boost::math::interpolators::cardinal_cubic_b_spline<double>;

  HessianPath() = default;

  std::size_t index(Eigen::Index i, Eigen::Index j) const {
    // upper triangle, row-major
    return static_cast<std::size_t>(i * dim_ - i * (i - 1) / 2 + (j - i));
  }

  void check_matrix(const Matrix& m, const char* what, Eigen::Index expect = -1) const {
    if (m.rows() != m.cols() || m.rows() < 2 || m.rows() % 2 != 0)
      throw DimensionError(std::string(what) + ": expected a 2n x 2n matrix");
    if (expect >= 0 && m.rows() != expect) throw DimensionError(std::string(what) + ": dimension mismatch");
    if (!m.allFinite()) throw DomainError(std::string(what) + ": non-finite entry");
    if (asymmetry(m) > 1e-12) throw DomainError(std::string(what) + ": matrix is not symmetric");
  }

  void build_splines() {
    auto splines = std::make_shared<std::vector<Spline>>();
    const double h = 1.0 / double(samples_.size() - 1);
    std::vector<double> values(samples_.size());
    for (Eigen::Index i = 0; i < dim_; ++i)
      for (Eigen::Index j = i; j < dim_; ++j) {
        for (std::size_t k = 0; k < samples_.size(); ++k)
          values[k] = 0.5 * (samples_[k](i, j) + samples_[k](j, i));
        splines->emplace_back(values.begin(), values.end(), 0.0, h);
      }
    splines_ = std::move(splines);
  }

  template <class F>
  HessianPath map(F f, Definiteness tag) const {
    switch (kind_) {
      case Kind::constant: return constant(f(s0_), tag);
      case Kind::fourier: {
        std::vector<Matrix> c, s;
        for (const auto& m : cos_) c.push_back(f(m));
        for (const auto& m : sin_) s.push_back(f(m));
        return fourier(f(s0_), std::move(c), std::move(s), tag);
      }
      case Kind::sampled: {
        std::vector<Matrix> out;
        for (const auto& m : samples_) {
          Matrix x = f(m);
          out.push_back(0.5 * (x + x.transpose()));
        }
        return sampled(std::move(out), tag);
      }
    }
    return *this;
  }

  Kind kind_ = Kind::constant;
  Definiteness tag_ = Definiteness::indefinite;
  Eigen::Index dim_ = 0;
  Matrix s0_;
  std::vector<Matrix> cos_, sin_, samples_;
  std::shared_ptr<const std::vector<Spline>> splines_;
};

/// Direct sum S1 + S2 acting on R^{2n1} x R^{2n2}, laid out so the result
/// is again in (x, y) block order.
inline Matrix symplectic_direct_sum(const Matrix& A, const Matrix& B) {
  const Eigen::Index n1 = A.rows() / 2, n2 = B.rows() / 2, n = n1 + n2;
  Matrix out = Matrix::Zero(2 * n, 2 * n);
  // index maps: A's x_i -> i, y_i -> n + i; B's x_j -> n1 + j, y_j -> n + n1 + j
  auto ia = [&](Eigen::Index k) { return k < n1 ? k : n + (k - n1); };
  auto ib = [&](Eigen::Index k) { return k < n2 ? n1 + k : n + n1 + (k - n2); };
  for (Eigen::Index r = 0; r < 2 * n1; ++r)
    for (Eigen::Index c = 0; c < 2 * n1; ++c) out(ia(r), ia(c)) = A(r, c);
  for (Eigen::Index r = 0; r < 2 * n2; ++r)
    for (Eigen::Index c = 0; c < 2 * n2; ++c) out(ib(r), ib(c)) = B(r, c);
  return out;
}

/// Symplectic direct sum of two generators of the same kind. Constant and
/// Fourier paths combine freely; sampled paths need equal sample counts.
inline HessianPath direct_sum(const HessianPath& a, const HessianPath& b) {
  using K = HessianPath::Kind;
  const Definiteness tag = a.definiteness() == b.definiteness() ? a.definiteness() : Definiteness::indefinite;
  if (a.kind() == K::sampled || b.kind() == K::sampled) {
    if (a.kind() != b.kind() || a.samples().size() != b.samples().size())
      throw DomainError("direct_sum: sampled paths need matching sample grids");
    std::vector<Matrix> out;
    for (std::size_t k = 0; k < a.samples().size(); ++k)
      out.push_back(symplectic_direct_sum(a.samples()[k], b.samples()[k]));
    return HessianPath::sampled(std::move(out), tag);
  }
  const Matrix s0 = symplectic_direct_sum(a.s0(), b.s0());
  if (a.kind() == K::constant && b.kind() == K::constant) return HessianPath::constant(s0, tag);
  auto pad = [](const std::vector<Matrix>& terms, std::size_t k, Eigen::Index d) {
    return k < terms.size() ? terms[k] : Matrix(Matrix::Zero(d, d));
  };
  std::vector<Matrix> c, s;
  const std::size_t kc = std::max(a.cos_terms().size(), b.cos_terms().size());
  const std::size_t ks = std::max(a.sin_terms().size(), b.sin_terms().size());
  for (std::size_t k = 0; k < kc; ++k)
    c.push_back(symplectic_direct_sum(pad(a.cos_terms(), k, a.dim()), pad(b.cos_terms(), k, b.dim())));
  for (std::size_t k = 0; k < ks; ++k)
    s.push_back(symplectic_direct_sum(pad(a.sin_terms(), k, a.dim()), pad(b.sin_terms(), k, b.dim())));
  return HessianPath::fourier(s0, std::move(c), std::move(s), tag);
}

}  // namespace czlab
