#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "czlab/czlab.hpp"
#include "support/random_paths.hpp"

using namespace czlab;

namespace {

constexpr double kPi = std::numbers::pi;

HessianPath planar(double lambda) {
  return HessianPath::constant(-lambda * Matrix::Identity(2, 2), Definiteness::negative_definite);
}

}  // namespace

TEST(AdmissibleEpsilon, HalfTheFirstCrossing) {
  EXPECT_NEAR(admissible_epsilon(planar(7.0)), kPi / 7.0, 1e-8);
}

TEST(AdmissibleEpsilon, CappedAtOneHalf) {
  EXPECT_EQ(admissible_epsilon(planar(5.0)), 0.5);
  EXPECT_EQ(admissible_epsilon(planar(0.1)), 0.5);
}

TEST(AdmissibleEpsilon, UnresolvedFirstCrossingRejected) {
  // first crossing at 2 pi / 5000 is below two grid spacings at 64 steps
  EXPECT_THROW(admissible_epsilon(planar(5000.0), 64), ResolutionError);
}

TEST(Nondegenerate, PlanarCases) {
  EXPECT_TRUE(check_nondegenerate(integrate(planar(7.0), 0.0, 1.0)));
  EXPECT_FALSE(check_nondegenerate(integrate(planar(2.0 * kPi), 0.0, 1.0)));
  EXPECT_FALSE(check_nondegenerate(integrate(HessianPath::constant(Matrix::Zero(2, 2)), 0.0, 1.0, 64)));
}

TEST(MorseIndex, PlanarAndBlockCases) {
  EXPECT_EQ(morse_index(planar(5.0)), 0);
  EXPECT_EQ(morse_index(planar(7.0)), 2);
  EXPECT_EQ(morse_index(direct_sum(planar(7.0), planar(13.0))), 6);
}

TEST(MorseIndex, DegenerateEndpointRejected) {
  try {
    morse_index(planar(4.0 * kPi));
    FAIL() << "expected DegenerateError";
  } catch (const DegenerateError& e) {
    EXPECT_NE(std::string(e.what()).find("degenerate at t=1"), std::string::npos);
  }
}

TEST(MorseIndex, IrregularCrossingRejected) {
  // mode with zero speed in one direction: Psi stays on the cycle
  Matrix S = Matrix::Zero(4, 4);
  S.diagonal() << -7, 0, -7, -0.0;
  S(1, 1) = -3;  // x2 direction only
  const auto path = integrate(HessianPath::constant(S), 0.0, 1.0, 1024);
  EXPECT_THROW(morse_index(path), Error);
}

TEST(MorseStaircase, JumpsAtConjugateTimes) {
  const auto path = integrate(planar(20.0), 0.0, 1.0);
  const std::vector<double> taus{0.1, 0.3, 0.32, 0.6, 0.63, 0.94, 0.95, 1.0};
  // conjugate times 2 pi k / 20 = 0.314, 0.628, 0.942
  const std::vector<int> expect{0, 0, 2, 2, 4, 4, 6, 6};
  EXPECT_EQ(morse_staircase(path, taus), expect);
}

TEST(AnalyzeExtremizer, Lambda7) {
  const auto r = analyze_extremizer(planar(7.0));
  EXPECT_EQ(r.morse_index, 2);
  EXPECT_NEAR(r.epsilon, kPi / 7.0, 1e-8);
  EXPECT_EQ(r.cz_interval.integer(), -2);
  EXPECT_EQ(r.cz_at_epsilon.halves, -2);  // -1 from the identity start
  EXPECT_EQ(r.cz_at_1.halves, -6);
  EXPECT_TRUE(r.additive);
  EXPECT_EQ(r.cz_difference, 2);
  EXPECT_LE(r.symplectic_residual, 1e-9);
}

TEST(AnalyzeExtremizer, Lambda5) {
  const auto r = analyze_extremizer(planar(5.0));
  EXPECT_EQ(r.morse_index, 0);
  EXPECT_EQ(r.cz_difference, 0);
  EXPECT_EQ(r.epsilon, 0.5);
}

TEST(AnalyzeExtremizer, EpsilonRobustness) {
  for (double lambda : {7.0, 13.0, 20.0}) {
    const double first = 2.0 * kPi / lambda;
    long rhs = -1;
    for (double f : {0.25, 0.5, 0.75}) {
      const auto r = analyze_extremizer(planar(lambda), TheoremOptions{}, f * first);
      if (rhs < 0) rhs = r.cz_difference;
      EXPECT_EQ(r.cz_difference, rhs) << lambda << " " << f;
      EXPECT_EQ(r.morse_index, r.cz_difference);
    }
  }
}

TEST(AnalyzeExtremizer, InadmissibleEpsilonRejected) {
  EXPECT_THROW(analyze_extremizer(planar(7.0), TheoremOptions{}, 0.95), DomainError);
}

TEST(VerifyTheorem, PlanarQuadraticModels) {
  for (double lambda : {1.0, 5.0, 7.0, 13.0, 20.0}) {
    const auto sc = quadratic_scenario(planar(lambda), planar(lambda).negated(), ValueCurve::constant(lambda),
                                       ValueCurve::constant(-lambda), "planar");
    const auto rep = verify_theorem(sc);
    EXPECT_TRUE(rep.verdict) << lambda;
    EXPECT_EQ(rep.theorem_lhs, 2 * long(std::floor(lambda / (2 * kPi))));
    EXPECT_EQ(rep.theorem_lhs, rep.theorem_rhs);
  }
}

TEST(VerifyTheorem, RandomNegativeDefiniteFourier) {
  std::mt19937_64 rng(12345);
  int verified = 0;
  for (int k = 0; k < 24; ++k) {
    const int n = 1 + k % 4;
    const auto S = fixtures::random_negative_fourier(rng, n);
    const auto path = integrate(S, 0.0, 1.0);
    if (!check_nondegenerate(path, 1e-3)) continue;
    const auto sc = quadratic_scenario(S, fixtures::random_negative_fourier(rng, n).negated(), ValueCurve::constant(1),
                                       ValueCurve::constant(-1), "random");
    try {
      const auto rep = verify_theorem(sc);
      EXPECT_TRUE(rep.verdict) << k;
      ++verified;
    } catch (const DegenerateError&) {
      // the min side may land on the cycle at t = 1
    }
  }
  EXPECT_GE(verified, 18);
}

TEST(VerifyTheorem, DegenerateScenarioFlagged) {
  EXPECT_THROW(verify_theorem(sphere_height_scenario(2.0 * kPi)), DegenerateError);
}
