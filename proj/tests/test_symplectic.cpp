#include <gtest/gtest.h>

#include <random>

#include "czlab/czlab.hpp"
#include "support/random_paths.hpp"

using namespace czlab;

TEST(StandardStructure, PlanarJIsQuarterTurn) {
  const auto s = standard_structure(1);
  Matrix quarter(2, 2);
  quarter << 0, -1, 1, 0;
  EXPECT_EQ(s.J, quarter);
  EXPECT_EQ(s.J * s.J, -Matrix::Identity(2, 2));
}

TEST(StandardStructure, JFourthPowerIsIdentity) {
  const auto s = standard_structure(2);
  EXPECT_EQ(s.J * s.J * s.J * s.J, Matrix::Identity(4, 4));
}

TEST(StandardStructure, OmegaOfUJuIsPositive) {
  const auto s = standard_structure(1);
  const Vector u = Vector::Unit(2, 0);
  EXPECT_DOUBLE_EQ(omega(s, u, s.J * u), 1.0);
}

TEST(StandardStructure, RejectsNonPositiveN) {
  EXPECT_THROW(standard_structure(0), DomainError);
}

TEST(Omega, VanishesOnDiagonal) {
  const auto s = standard_structure(2);
  const Vector u = Vector::LinSpaced(4, -1.0, 2.0);
  EXPECT_EQ(omega(s, u, u), 0.0);
}

TEST(Omega, AntisymmetricOnRandomVectors) {
  const auto s = standard_structure(2);
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (int k = 0; k < 100; ++k) {
    Vector u(4), v(4);
    for (int i = 0; i < 4; ++i) u(i) = g(rng), v(i) = g(rng);
    EXPECT_NEAR(omega(s, u, v), -omega(s, v, u), 1e-15);
  }
}

TEST(Omega, MismatchedDimensionThrows) {
  const auto s = standard_structure(1);
  EXPECT_THROW(omega(s, Vector::Zero(2), Vector::Zero(4)), DimensionError);
}

TEST(SymplecticResidual, IdentityAndJAreExact) {
  const auto s = standard_structure(3);
  EXPECT_EQ(symplectic_residual(s, Matrix::Identity(6, 6)), 0.0);
  EXPECT_EQ(symplectic_residual(s, s.J), 0.0);
}

TEST(SymplecticResidual, TwiceIdentityInPlane) {
  // (2I)^T Omega (2I) - Omega = 3 Omega, whose largest entry is 3.
  EXPECT_DOUBLE_EQ(symplectic_residual(2.0 * Matrix::Identity(2, 2)), 3.0);
}

TEST(SymplecticResidual, ExponentialOfHamiltonianMatrixIsSymplectic) {
  std::mt19937_64 rng(5);
  for (int n = 1; n <= 4; ++n) {
    const Matrix M = fixtures::random_symplectic(rng, n);
    EXPECT_LT(symplectic_residual(M), 1e-12);
    EXPECT_NEAR(M.determinant(), 1.0, 1e-11);
    EXPECT_LT((symplectic_inverse(M) * M - Matrix::Identity(2 * n, 2 * n)).cwiseAbs().maxCoeff(), 1e-11);
  }
}

TEST(HamiltonianMatrix, IsTraceFreeAndInfinitesimallySymplectic) {
  std::mt19937_64 rng(7);
  const auto s = standard_structure(3);
  const Matrix S = fixtures::random_symmetric(rng, 6, 4.0);
  const Matrix A = hamiltonian_matrix(s, S);
  EXPECT_NEAR(A.trace(), 0.0, 1e-13);
  // A^T Omega + Omega A = 0
  EXPECT_LT((A.transpose() * s.omega_matrix + s.omega_matrix * A).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Selftest, StandardStructuresPass) {
  for (int n = 1; n <= 4; ++n) {
    const auto r = hamiltonian_vector_field_selftest_detailed(standard_structure(n));
    EXPECT_TRUE(r.passed) << (r.failures.empty() ? "" : r.failures.front());
  }
}

TEST(Selftest, FlippedJFails) {
  auto s = standard_structure(1);
  s.J = -s.J;
  EXPECT_FALSE(hamiltonian_vector_field_selftest(s));
}

TEST(Selftest, NegatedOmegaFails) {
  auto s = standard_structure(1);
  s.omega_matrix = -s.omega_matrix;
  EXPECT_FALSE(hamiltonian_vector_field_selftest(s));
}

TEST(Expm, MatchesClosedFormRotation) {
  const auto s = standard_structure(1);
  for (double a : {0.0, 1e-6, 0.3, 5.0, 40.0, 300.0}) {
    const Matrix R = expm(Matrix(a * s.J));
    Matrix expect(2, 2);
    expect << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
    EXPECT_LT((R - expect).cwiseAbs().maxCoeff(), 1e-13 * std::max(1.0, a)) << "angle " << a;
  }
}

TEST(Expm, HyperbolicClosedForm) {
  Matrix A(2, 2);
  A << 0.7, 0, 0, -0.7;
  const Matrix E = expm(A);
  EXPECT_NEAR(E(0, 0), std::exp(0.7), 1e-14);
  EXPECT_NEAR(E(1, 1), std::exp(-0.7), 1e-14);
  EXPECT_EQ(E(0, 1), 0.0);
}

TEST(Expm, ZeroIsIdentity) {
  EXPECT_LT((expm(Matrix::Zero(4, 4)) - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Expm, NilpotentClosedForm) {
  Matrix N = Matrix::Zero(3, 3);
  N(0, 1) = 2.0;
  N(1, 2) = 3.0;
  const Matrix expect = Matrix::Identity(3, 3) + N + 0.5 * N * N;
  EXPECT_LT((expm(N) - expect).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(HessianPath, RejectsAsymmetricAndNonFinite) {
  Matrix S = Matrix::Identity(2, 2);
  S(0, 1) = 1e-3;
  EXPECT_THROW(HessianPath::constant(S), DomainError);
  Matrix T = Matrix::Identity(2, 2);
  T(0, 0) = std::nan("");
  EXPECT_THROW(HessianPath::constant(T), DomainError);
}

TEST(HessianPath, RejectsOddDimension) {
  EXPECT_THROW(HessianPath::constant(Matrix::Identity(3, 3)), DimensionError);
}

TEST(HessianPath, SampledNeedsFiveSamples) {
  std::vector<Matrix> four(4, Matrix::Identity(2, 2));
  EXPECT_ANY_THROW(HessianPath::sampled(four));
  std::vector<Matrix> five(5, Matrix::Identity(2, 2));
  EXPECT_NO_THROW(HessianPath::sampled(five));
}

TEST(HessianPath, SampledReproducesLinearRamp) {
  std::vector<Matrix> samples;
  for (int i = 0; i <= 16; ++i) samples.push_back(-(6.0 + 2.0 * i / 16.0) * Matrix::Identity(2, 2));
  const auto S = HessianPath::sampled(samples, Definiteness::negative_definite);
  for (double t : {0.0, 0.013, 0.5, 0.77, 1.0}) EXPECT_NEAR(S(t)(0, 0), -(6.0 + 2.0 * t), 1e-10) << t;
}

TEST(HessianPath, FourierEvaluation) {
  const Matrix I = Matrix::Identity(2, 2);
  const auto S = HessianPath::fourier(-5 * I, {I}, {2 * I});
  const double t = 0.3;
  const double pi = std::numbers::pi;
  EXPECT_NEAR(S(t)(1, 1), -5 + std::cos(2 * pi * t) + 2 * std::sin(2 * pi * t), 1e-14);
  EXPECT_EQ(S(t)(0, 1), 0.0);
}

TEST(HessianPath, NegationFlipsDefiniteness) {
  const auto S = HessianPath::constant(-7 * Matrix::Identity(2, 2), Definiteness::negative_definite);
  EXPECT_EQ(S.negated().definiteness(), Definiteness::positive_definite);
  EXPECT_EQ(S.negated()(0.2)(0, 0), 7.0);
}

TEST(HessianPath, DefinitenessViolationDetected) {
  // eigenvalue -3 + 3.1 cos(2 pi t) is positive near t = 0
  const Matrix I = Matrix::Identity(2, 2);
  const auto S = HessianPath::fourier(-3 * I, {3.1 * I}, {}, Definiteness::negative_definite);
  ASSERT_TRUE(S.definiteness_violation().has_value());
  EXPECT_NEAR(*S.definiteness_violation(), 0.0, 0.05);
}

TEST(DirectSum, InterleavesCoordinates) {
  Matrix A(2, 2), B(2, 2);
  A << 1, 2, 2, 3;
  B << 4, 5, 5, 6;
  const Matrix C = symplectic_direct_sum(A, B);
  // layout (x1, x2, y1, y2)
  EXPECT_EQ(C(0, 0), 1);
  EXPECT_EQ(C(0, 2), 2);
  EXPECT_EQ(C(2, 2), 3);
  EXPECT_EQ(C(1, 1), 4);
  EXPECT_EQ(C(1, 3), 5);
  EXPECT_EQ(C(3, 3), 6);
  EXPECT_EQ(C(0, 1), 0);
  // direct sum of symplectic matrices is symplectic in the standard structure
  std::mt19937_64 rng(3);
  const Matrix M = symplectic_direct_sum(fixtures::random_symplectic(rng, 1), fixtures::random_symplectic(rng, 2));
  EXPECT_LT(symplectic_residual(M), 1e-12);
}
