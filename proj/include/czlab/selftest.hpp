#pragma once

// Convention self-test. Derives the Hamiltonian field of H = -|z|^2 / 2 from
// omega(X_H, .) = -dH using only the Gram matrix of the structure under test,
// then checks it against the generator J S the integrator uses, checks
// compatibility omega(u, J u) > 0, symplecticity of the flow, and that the
// intrinsic crossing form omega(v, Psi' v) at the first return (t = 2 pi) is
// negative definite and agrees with the realization v^T S v used by
// crossing_form.

#include <numbers>
#include <string>
#include <vector>

#include "czlab/crossing.hpp"
#include "czlab/expm.hpp"
#include "czlab/symplectic.hpp"

namespace czlab {

struct SelftestResult {
  bool passed = true;
  std::vector<std::string> failures;

  void fail(std::string what) {
    passed = false;
    failures.push_back(std::move(what));
  }
};

inline SelftestResult hamiltonian_vector_field_selftest_detailed(const StandardStructure& s) {
  SelftestResult r;
  const int d = s.dim();
  if (s.J.rows() != d || s.omega_matrix.rows() != d) {
    r.fail("structure matrices have the wrong size");
    return r;
  }
  const Matrix I = Matrix::Identity(d, d);
  if ((s.J * s.J + I).cwiseAbs().maxCoeff() != 0.0) r.fail("J^2 != -I");
  if ((s.omega_matrix + s.omega_matrix.transpose()).cwiseAbs().maxCoeff() != 0.0) r.fail("omega not antisymmetric");
  if (std::abs(s.omega_matrix.determinant()) < 0.5) r.fail("omega degenerate");

  // omega(u, J u) > 0 on basis vectors and a deterministic spread of others.
  for (int k = 0; k < d + 4; ++k) {
    Vector u = Vector::Zero(d);
    if (k < d)
      u(k) = 1.0;
    else
      for (int i = 0; i < d; ++i) u(i) = std::sin(1.7 * (k + 1) * (i + 1)) + 0.3;
    const double q = u.dot(s.omega_matrix * (s.J * u));
    if (!(q > 0)) {
      r.fail("omega(u, J u) <= 0 for u = e" + std::to_string(k));
      break;
    }
  }

  // Field of H = -|z|^2/2 from omega(X, .) = -dH:  Omega^T A = -S.
  const Matrix S = -I;
  const Matrix A = -s.omega_matrix.transpose().fullPivLu().solve(S);
  const Matrix library_generator = s.J * S;
  if ((A - library_generator).cwiseAbs().maxCoeff() > 1e-12)
    r.fail("X_H from omega(X_H, .) = -dH disagrees with the generator J S");

  for (double t : {0.3, 1.0, 2.5}) {
    const Matrix psi = expm(t * A);
    if (symplectic_residual(s, psi) > 1e-12) r.fail("flow of X_H is not symplectic at t = " + std::to_string(t));
  }

  const double tau = 2.0 * std::numbers::pi;
  const Matrix psi = expm(tau * A);
  Eigen::JacobiSVD<Matrix> svd(psi - I, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  int m = 0;
  for (int i = d - 1; i >= 0 && sv(i) < 1e-7; --i) ++m;
  if (m != d) {
    r.fail("first return of the quadratic maximum is not a full crossing");
    return r;
  }
  const Matrix K = svd.matrixV().rightCols(m);
  // Psi'(tau) v = A Psi v = A v on the kernel.
  const Matrix Q = K.transpose() * s.omega_matrix * A * K;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (Q + Q.transpose()), Eigen::EigenvaluesOnly);
  if (!(es.eigenvalues().maxCoeff() < 0)) r.fail("intrinsic crossing form is not negative definite at a maximum");
  const Signature sig = crossing_form(S, K);
  if (sig.negative != m) r.fail("crossing_form realization disagrees with the intrinsic crossing form");
  return r;
}

inline bool hamiltonian_vector_field_selftest(const StandardStructure& s) {
  return hamiltonian_vector_field_selftest_detailed(s).passed;
}

}  // namespace czlab
