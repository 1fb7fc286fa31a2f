#pragma once

// Symplectic conventions and small dense-matrix primitives.
//
// Coordinates on R^{2n} are z = (x_1..x_n, y_1..y_n). The compiled-in pair is
//
//   J = [[0, -I], [I, 0]]        (multiplication by i on x + iy)
//   omega(u, v) = u^T Omega v,   Omega = J^T = [[0, I], [-I, 0]]
//
// so omega(u, J u) = |u|^2 and the Hamiltonian field defined by
// omega(X_H, .) = -dH is X_H = J grad H. A quadratic Hamiltonian with Hessian
// S therefore linearizes to Psi' = J S Psi.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

#include "czlab/errors.hpp"

namespace czlab {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr const char* kVersion = "0.3.1";

struct StandardStructure {
  int n = 0;
  Matrix J;
  Matrix omega_matrix;

  int dim() const noexcept { return 2 * n; }
};

inline StandardStructure standard_structure(int n) {
  if (n < 1) throw DomainError("standard_structure: n must be >= 1");
  StandardStructure s;
  s.n = n;
  const int d = 2 * n;
  s.J = Matrix::Zero(d, d);
  s.J.topRightCorner(n, n) = -Matrix::Identity(n, n);
  s.J.bottomLeftCorner(n, n) = Matrix::Identity(n, n);
  s.omega_matrix = s.J.transpose();
  return s;
}

/// Structure matching a 2n x 2n matrix; throws on odd or empty dimension.
inline StandardStructure structure_for(Eigen::Index dim) {
  if (dim < 2 || dim % 2 != 0)
    throw DimensionError("symplectic dimension must be even and >= 2, got " + std::to_string(dim));
  return standard_structure(static_cast<int>(dim / 2));
}

inline double omega(const StandardStructure& s, const Vector& u, const Vector& v) {
  if (u.size() != s.dim() || v.size() != s.dim()) throw DimensionError("omega: dimension mismatch");
  return u.dot(s.omega_matrix * v);
}

/// max |M^T Omega M - Omega|; zero iff M is symplectic.
inline double symplectic_residual(const StandardStructure& s, const Matrix& M) {
  if (M.rows() != s.dim() || M.cols() != s.dim())
    throw DimensionError("symplectic_residual: dimension mismatch");
  return (M.transpose() * s.omega_matrix * M - s.omega_matrix).cwiseAbs().maxCoeff();
}

inline double symplectic_residual(const Matrix& M) {
  return symplectic_residual(structure_for(M.rows()), M);
}

/// Omega^{-1} M^T Omega, the exact inverse of a symplectic M.
inline Matrix symplectic_inverse(const Matrix& M) {
  const auto s = structure_for(M.rows());
  return -s.omega_matrix * M.transpose() * s.omega_matrix;
}

inline Matrix hamiltonian_matrix(const StandardStructure& s, const Matrix& S) { return s.J * S; }

inline bool all_finite(const Matrix& M) { return M.allFinite(); }

/// Relative asymmetry max|S - S^T| / max(1, max|S|).
inline double asymmetry(const Matrix& S) {
  const double scale = std::max(1.0, S.cwiseAbs().maxCoeff());
  return (S - S.transpose()).cwiseAbs().maxCoeff() / scale;
}

inline double spectral_norm(const Matrix& M) {
  if (M.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(M);
  return svd.singularValues()(0);
}

}  // namespace czlab
