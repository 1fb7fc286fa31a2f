#pragma once

// Dense matrix exponential: degree-13 diagonal Pade approximant with scaling
// and squaring (Higham 2005). Diagonal Pade approximants r satisfy
// r(-A) = r(A)^{-1}, so for Hamiltonian A the result is symplectic up to
// rounding, and squaring keeps it that way.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "czlab/errors.hpp"

namespace czlab {

inline Eigen::MatrixXd expm(const Eigen::MatrixXd& A) {
  using M = Eigen::MatrixXd;
  if (A.rows() != A.cols()) throw DimensionError("expm: matrix must be square");
  if (!A.allFinite()) throw NumericalError("expm: non-finite input");
  const Eigen::Index d = A.rows();
  if (d == 0) return A;
  if (A.isZero(0.0)) return M::Identity(d, d);

  static constexpr double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                                 1187353796428800.0,  129060195264000.0,   10559470521600.0,
                                 670442572800.0,      33522128640.0,       1323241920.0,
                                 40840800.0,          960960.0,            16380.0,
                                 182.0,               1.0};
  constexpr double theta13 = 5.371920351148152;

  const double norm1 = A.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > theta13) squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
  const M As = A / std::ldexp(1.0, squarings);

  const M I = M::Identity(d, d);
  const M A2 = As * As;
  const M A4 = A2 * A2;
  const M A6 = A4 * A2;
  const M U = As * (A6 * (b[13] * A6 + b[11] * A4 + b[9] * A2) + b[7] * A6 + b[5] * A4 +
                    b[3] * A2 + b[1] * I);
  const M V =
      A6 * (b[12] * A6 + b[10] * A4 + b[8] * A2) + b[6] * A6 + b[4] * A4 + b[2] * A2 + b[0] * I;

  M R = (V - U).partialPivLu().solve(V + U);
  for (int k = 0; k < squarings; ++k) R = R * R;
  if (!R.allFinite()) throw NumericalError("expm: overflow");
  return R;
}

}  // namespace czlab
