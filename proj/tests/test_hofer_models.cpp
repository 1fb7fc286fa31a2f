#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "czlab/czlab.hpp"

using namespace czlab;

namespace {

constexpr double kPi = std::numbers::pi;

HessianPath planar(double lambda) {
  return HessianPath::constant(-lambda * Matrix::Identity(2, 2), Definiteness::negative_definite);
}

bool contains(const std::vector<std::string>& v, const std::string& needle) {
  for (const auto& s : v)
    if (s.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST(SphereHeight, Lambda7Indices) {
  const auto rep = verify_theorem(sphere_height_scenario(7.0));
  EXPECT_EQ(rep.morse_index_plus, 2);
  EXPECT_EQ(rep.morse_index_minus, 2);
  EXPECT_EQ(rep.morse_index_total, 4);
  EXPECT_TRUE(rep.verdict);
}

TEST(SphereHeight, Lambda5IsStable) {
  EXPECT_EQ(verify_theorem(sphere_height_scenario(5.0)).morse_index_total, 0);
}

TEST(SphereHeight, FullTurnIsDegenerate) {
  const auto sc = sphere_height_scenario(2.0 * kPi);
  EXPECT_FALSE(check_nondegenerate(integrate(sc.s_max, 0.0, 1.0)));
  EXPECT_THROW(verify_theorem(sc), DegenerateError);
}

TEST(SphereHeight, NegativeLambdaSwapsPoles) {
  const auto sc = sphere_height_scenario(-7.0);
  EXPECT_EQ(sc.metadata.at("max_at_north_pole"), 0.0);
  EXPECT_EQ(verify_theorem(sc).morse_index_total, 4);
}

TEST(SphereHeight, ZeroLambdaRejected) {
  EXPECT_THROW(sphere_height_scenario(0.0), DomainError);
  EXPECT_THROW(sphere_height_scenario(std::nan("")), DomainError);
}

TEST(SphereHeight, PoleGerms) {
  const auto sc = sphere_height_scenario(7.0);
  EXPECT_EQ(sc.s_max(0.3), -7.0 * Matrix::Identity(2, 2));
  EXPECT_EQ(sc.s_min(0.3), 7.0 * Matrix::Identity(2, 2));
  EXPECT_DOUBLE_EQ(sc.max_curve(0.4), 7.0);
  EXPECT_DOUBLE_EQ(sc.min_curve(0.4), -7.0);
}

TEST(SphereProfile, OddProfileMatchesHeight) {
  const auto a = sphere_profile_scenario(Profile{{0.0, 7.0}});
  EXPECT_NEAR(a.normalization->constant, 0.0, 1e-14);
  const auto ra = verify_theorem(a);
  const auto rb = verify_theorem(sphere_height_scenario(7.0));
  EXPECT_EQ(ra.morse_index_plus, rb.morse_index_plus);
  EXPECT_EQ(ra.morse_index_minus, rb.morse_index_minus);
  EXPECT_EQ(ra.theorem_rhs, rb.theorem_rhs);
}

TEST(SphereProfile, ConstantShiftNormalizedAway) {
  const auto sc = sphere_profile_scenario(Profile{{3.0, 7.0}});
  EXPECT_NEAR(sc.normalization->constant, -3.0, 1e-13);
  EXPECT_LE(sc.normalization->archimedes_gap, 1e-8);
  EXPECT_LE(sc.normalization->residual, 1e-8);
  const auto L = hofer_lengths(sc);
  EXPECT_NEAR(L.L_plus, 7.0, 1e-10);
  EXPECT_NEAR(L.L_minus, 7.0, 1e-10);
  EXPECT_EQ(verify_theorem(sc).morse_index_total, 4);
}

TEST(SphereProfile, CubicProfilePoleSpeeds) {
  // f = 7 z + z^3: f'(+-1) = 10, conjugate times 2 pi k / 10 = 0.628, 1.257; only the first is before 1.
  const auto sc = sphere_profile_scenario(Profile{{0.0, 7.0, 0.0, 1.0}});
  EXPECT_DOUBLE_EQ(sc.metadata.at("pole_speed_max"), 10.0);
  EXPECT_DOUBLE_EQ(sc.metadata.at("pole_speed_min"), 10.0);
  const auto rep = verify_theorem(sc);
  ASSERT_EQ(rep.crossings_max().size(), 1u);
  EXPECT_NEAR(rep.crossings_max()[0].time, 2.0 * kPi / 10.0, 1e-8);
  EXPECT_EQ(rep.morse_index_plus, 2);
  EXPECT_TRUE(rep.verdict);
}

TEST(SphereProfile, NormalizationOfEvenTerms) {
  // mean of z^2 over the sphere is 1/3, so c = -(1 + 2/3) for f = 1 + 5 z + 2 z^2
  const auto sc = sphere_profile_scenario(Profile{{1.0, 5.0, 2.0}});
  EXPECT_NEAR(sc.normalization->constant, -(1.0 + 2.0 / 3.0), 1e-13);
  EXPECT_LE(sc.normalization->archimedes_gap, 1e-8);
}

TEST(SphereProfile, NonMonotoneRejected) {
  EXPECT_THROW(sphere_profile_scenario(Profile{{0.0, 0.0, 1.0}}), DomainError);
  EXPECT_THROW(sphere_profile_scenario(Profile{{0.0, 1.0, 0.0, -1.0}}), DomainError);  // f'(+-1) = -2 < 0 < f'(0)
}

TEST(Quadratic, MatchesSphereHeight) {
  const auto q = quadratic_scenario(planar(7.0), planar(7.0).negated(), ValueCurve::constant(7.0),
                                    ValueCurve::constant(-7.0));
  const auto a = verify_theorem(q);
  const auto b = verify_theorem(sphere_height_scenario(7.0));
  EXPECT_EQ(a.morse_index_plus, b.morse_index_plus);
  EXPECT_EQ(a.morse_index_minus, b.morse_index_minus);
  EXPECT_EQ(a.theorem_lhs, b.theorem_lhs);
  EXPECT_EQ(a.theorem_rhs, b.theorem_rhs);
  EXPECT_NEAR(a.epsilon(), b.epsilon(), 1e-12);
  EXPECT_TRUE(q.local_model);
}

TEST(Quadratic, TimeDependentRampConjugateTime) {
  // accumulated angle int_0^tau (6 + 2 s) ds = tau^2 + 6 tau reaches 2 pi at tau = sqrt(9 + 2 pi) - 3
  std::vector<Matrix> samples;
  for (int i = 0; i <= 16; ++i) samples.push_back(-(6.0 + 2.0 * i / 16.0) * Matrix::Identity(2, 2));
  const HessianFunction ramp{2, [](double t) { return Matrix(-(6.0 + 2.0 * t) * Matrix::Identity(2, 2)); }};
  const double tau = std::sqrt(9.0 + 2.0 * kPi) - 3.0;
  const auto exact = find_crossings(integrate(ramp, 0.0, 1.0), Window{0.0, 1.0});
  ASSERT_EQ(exact.size(), 1u);
  EXPECT_NEAR(exact[0].time, tau, 1e-9);
  const auto sc = quadratic_scenario(HessianPath::sampled(samples, Definiteness::negative_definite),
                                     planar(3.0).negated(), ValueCurve::constant(1.0), ValueCurve::constant(-1.0));
  const auto rep = verify_theorem(sc);
  ASSERT_EQ(rep.crossings_max().size(), 1u);
  EXPECT_NEAR(rep.crossings_max()[0].time, tau, 1e-8);
  EXPECT_EQ(rep.morse_index_plus, 2);
  EXPECT_TRUE(rep.verdict);
}

TEST(Quadratic, IndefiniteMaxRejected) {
  Matrix S = Matrix::Identity(2, 2);
  S(0, 0) = -1;
  EXPECT_THROW(quadratic_scenario(HessianPath::constant(S), planar(1.0).negated(), ValueCurve::constant(1),
                                  ValueCurve::constant(-1)),
               DomainError);
}

TEST(Quadratic, CrossingCurvesRejected) {
  EXPECT_THROW(quadratic_scenario(planar(7.0), planar(7.0).negated(), ValueCurve::constant(-1),
                                  ValueCurve::constant(1)),
               DomainError);
}

TEST(HoferLengths, SphereHeight) {
  const auto L = hofer_lengths(sphere_height_scenario(7.0));
  EXPECT_NEAR(L.L_plus, 7.0, 1e-12);
  EXPECT_NEAR(L.L_minus, 7.0, 1e-12);
  EXPECT_NEAR(L.L, 14.0, 1e-12);
}

TEST(HoferLengths, OscillatingCurvesAverage) {
  Scenario sc = quadratic_scenario(planar(3.0), planar(3.0).negated(), ValueCurve{2.0, {0.5, 0.1}, {0.7}},
                                   ValueCurve{-1.0, {0.3}, {}});
  const auto L = hofer_lengths(sc);
  EXPECT_NEAR(L.L_plus, 2.0, 1e-13);
  EXPECT_NEAR(L.L_minus, 1.0, 1e-13);
  EXPECT_NEAR(L.L, 3.0, 1e-13);
}

TEST(Validate, ConstructedScenariosAreClean) {
  EXPECT_TRUE(validate_ustilovsky(sphere_height_scenario(7.0)).empty());
  EXPECT_TRUE(validate_ustilovsky(sphere_profile_scenario(Profile{{3.0, 7.0}})).empty());
}

TEST(Validate, PositiveEigenvalueAtHalf) {
  // eigenvalue -2 - 2.1 cos(2 pi t) peaks at +0.1 when t = 0.5
  const Matrix I = Matrix::Identity(2, 2);
  const auto S = HessianPath::fourier(-2.0 * I, {-2.1 * I}, {}, Definiteness::negative_definite);
  const auto sc = quadratic_scenario(S, planar(3.0).negated(), ValueCurve::constant(1), ValueCurve::constant(-1));
  const auto v = validate_ustilovsky(sc);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0], "S_max not negative definite at t≈0.5");
  EXPECT_THROW(verify_theorem(sc), ValidationError);
}

TEST(Validate, CollidingExtremalValues) {
  // max - min = 1 - cos(2 pi (t - 0.3)) vanishes at t = 0.3
  const double a = 2.0 * kPi * 0.3;
  Scenario sc = sphere_height_scenario(7.0);
  sc.max_curve = ValueCurve{1.0, {-std::cos(a)}, {-std::sin(a)}};
  sc.min_curve = ValueCurve::constant(0.0);
  sc.normalization.reset();
  const auto v = validate_ustilovsky(sc);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0], "extremal values collide at t≈0.3");
  EXPECT_TRUE(contains(v, "extremal values collide"));
}
