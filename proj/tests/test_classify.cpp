#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "quatmob/classify.hpp"
#include "quatmob/error.hpp"
#include "quatmob/sampling.hpp"

using namespace quatmob;
using std::numbers::pi;

namespace {

QMatrix2 diag_form(double r, double t, double p) {
  return QMatrix2::diag(Quaternion::polar_i(r, t), Quaternion::polar_i(1 / r, p));
}

QMatrix2 parabolic(double t) {
  const Quaternion e = Quaternion::polar_i(1, t);
  return {e, Quaternion(1), Quaternion(), e};
}

}  // namespace

TEST(DynamicalType, Examples) {
  EXPECT_EQ(dynamical_type(QMatrix2::diag(2.0 * Quaternion::i(), 0.5 * Quaternion::i())), DynamicalType::Hyperbolic);
  EXPECT_EQ(dynamical_type(QMatrix2::diag(Quaternion::i(), Quaternion(1))), DynamicalType::Elliptic);
  EXPECT_EQ(dynamical_type(parabolic(pi / 3)), DynamicalType::Parabolic);
}

TEST(CoeffIdentities, Examples) {
  EXPECT_LT(coeff_identities(1, 0, 0).max_abs_diff({4, 6, 4, 1}), 1e-15);
  EXPECT_LT(coeff_identities(2, pi / 2, pi / 2).max_abs_diff({0, 17.0 / 4, 0, 1}), 1e-14);
  const CharPoly c = coeff_identities(1, pi / 4, pi / 3);
  EXPECT_NEAR(c.c3, 2 * (std::cos(pi / 4) + 0.5), 1e-14);
  EXPECT_NEAR(c.c1, c.c3, 1e-14);
  EXPECT_NEAR(c.c2, 4 * std::cos(pi / 4) * 0.5 + 2, 1e-14);
  EXPECT_LT(c.max_abs_diff(oracle::char_poly(diag_form(1, pi / 4, pi / 3))), 1e-12);
}

TEST(CoeffIdentities, MatchOracleOnRandomParameters) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> r(0.1, 10), a(0, pi);
  for (int k = 0; k < 1000; ++k) {
    const double rr = r(rng), t = a(rng), p = a(rng);
    const CharPoly ref = oracle::char_poly(diag_form(rr, t, p));
    EXPECT_LT(coeff_identities(rr, t, p).max_abs_diff(ref), 1e-9 * std::pow(rr + 1 / rr, 4));
  }
}

TEST(CoeffIdentities, DomainErrors) {
  EXPECT_THROW(coeff_identities(0, 0, 0), Error);
  EXPECT_THROW(coeff_identities(1, -0.1, 0), Error);
  EXPECT_THROW(coeff_identities(1, 0, 4), Error);
}

TEST(AlgebraicClass, Examples) {
  const AlgebraicClass three = algebraic_class({0, 17.0 / 4, 0, 1}, true);
  EXPECT_EQ(three.case_id, 3);
  EXPECT_NEAR(three.r, 2.0, 1e-12);

  const AlgebraicClass six = algebraic_class({4, 6, 4, 1}, true);
  EXPECT_EQ(six.case_id, 6);
  EXPECT_NEAR(six.theta, 0.0, 1e-12);
  EXPECT_TRUE(six.flags.angle_zero);
  EXPECT_TRUE(six.flags.c1_at_four);

  const CharPoly c = char_poly(diag_form(2, pi / 4, pi / 3));
  EXPECT_NEAR(c.c3, 3.32843, 1e-5);
  EXPECT_NEAR(c.c1, 2.70711, 1e-5);
  const AlgebraicClass one = algebraic_class(c, true);
  EXPECT_EQ(one.case_id, 1);
  EXPECT_NEAR(one.r, 2.0, 1e-9);
  EXPECT_NEAR(one.theta, pi / 4, 1e-9);
  EXPECT_NEAR(*one.phi, pi / 3, 1e-9);
}

TEST(AlgebraicClass, ParabolicIsCaseEight) {
  for (const double t : {0.0, 0.5, pi / 2, 2.0, pi}) {
    const QMatrix2 n = parabolic(t);
    const AlgebraicClass c = algebraic_class(char_poly(n), is_diagonalizable(n));
    EXPECT_EQ(c.case_id, 8) << t;
    EXPECT_NEAR(c.theta, t, 1e-9);
    EXPECT_FALSE(c.phi.has_value());
  }
}

TEST(AlgebraicClass, RejectsUnnormalizedPolynomial) {
  try {
    algebraic_class({4, 6, 4, 2}, true);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DomainError);
  }
}

TEST(AlgebraicClass, BoundaryFlags) {
  EXPECT_TRUE(algebraic_class(char_poly(diag_form(1, pi / 2, pi / 2)), true).flags.angle_half_pi);
  EXPECT_TRUE(algebraic_class(char_poly(diag_form(1, 0, pi)), true).flags.angle_real);
  const AlgebraicClass four = algebraic_class(char_poly(diag_form(2, 0, 0)), true);
  EXPECT_EQ(four.case_id, 4);
  EXPECT_TRUE(four.flags.angle_real);
  const AlgebraicClass two = algebraic_class(char_poly(diag_form(2, 0, pi)), true);
  EXPECT_EQ(two.case_id, 2);
  EXPECT_TRUE(two.flags.angle_real);
}

TEST(AlgebraicClass, AgreesWithNormalFormOnEveryFamily) {
  for (const std::string& family : family_names()) {
    for (std::uint64_t k = 0; k < 100; ++k) {
      auto rng = sample_rng(2, 0, k);
      const GeneratedSample s = sample_family(family, rng);
      const CharPoly cp = char_poly(s.matrix);
      const bool diag = is_diagonalizable(s.matrix);
      const int expected = family_case(s.form);
      EXPECT_EQ(algebraic_class(cp, diag).case_id, expected) << family << " #" << k;
      EXPECT_EQ(family_case(normal_form(s.matrix).form), expected) << family << " #" << k;
      EXPECT_EQ(matching_cases(cp, diag), std::vector<int>{expected}) << family << " #" << k;
    }
  }
}

TEST(AlgebraicClass, GeneratedCaseOneKeepsMargin) {
  for (std::uint64_t k = 0; k < 200; ++k) {
    auto rng = sample_rng(3, 0, k);
    const CharPoly cp = char_poly(sample_family("case-1", rng).matrix);
    EXPECT_GT(std::abs(cp.c1 * cp.c1 - cp.c3 * cp.c3), 10 * kClassifyTol);
  }
}

// Items 6 and 7 of the characterization need the diagonalizable qualifier:
// the parabolic block at theta = pi/2 meets the coefficient conditions of 7 and 8.
TEST(MatchingCases, ParabolicHalfPiNeedsQualifier) {
  const CharPoly cp = char_poly(parabolic(pi / 2));
  EXPECT_NEAR(cp.c1, 0, 1e-12);
  EXPECT_NEAR(cp.c2, 2, 1e-12);
  EXPECT_EQ(matching_cases(cp, false), std::vector<int>{8});
  EXPECT_EQ(matching_cases(cp, true), std::vector<int>{7});
}

TEST(CoefficientLemma, SumAndDifference) {
  const CharPoly a = char_poly(diag_form(1, 0.4, 1.3));
  EXPECT_NEAR(a.c1, a.c3, 1e-12);
  const CharPoly b = char_poly(diag_form(2.5, 0.7, 0.7));
  EXPECT_NEAR(b.c1, b.c3, 1e-12);
  const CharPoly c = char_poly(diag_form(2.5, 0.7, pi - 0.7));
  EXPECT_NEAR(c.c1, -c.c3, 1e-12);
  const CharPoly d = char_poly(diag_form(2.5, 0.7, 1.9));
  EXPECT_GT(std::abs(d.c1 - d.c3), 0.1);
  EXPECT_GT(std::abs(d.c1 + d.c3), 0.1);
}

// The stated c1 = 0 item misses points with cos(theta) = -r^2 cos(phi).
TEST(CoefficientLemma, COneVanishesOffTheStatedSet) {
  const double r = 2, p = std::acos(0.1), t = std::acos(-0.4);
  const CharPoly cp = oracle::char_poly(diag_form(r, t, p));
  EXPECT_NEAR(cp.c1, 0, 1e-12);
  EXPECT_GT(std::abs(cp.c3), 0.1);
  EXPECT_FALSE(std::abs(t - pi / 2) < 1e-3 || std::abs(r - 1) < 1e-3);
  // with c3 = 0 added the stated set is exact
  const CharPoly half = oracle::char_poly(diag_form(r, pi / 2, pi / 2));
  EXPECT_NEAR(half.c1, 0, 1e-12);
  EXPECT_NEAR(half.c3, 0, 1e-12);
  const CharPoly supp = oracle::char_poly(diag_form(1, 0.3, pi - 0.3));
  EXPECT_NEAR(supp.c1, 0, 1e-12);
  EXPECT_NEAR(supp.c3, 0, 1e-12);
}

namespace {

double item_i(double r, double t, double p) {
  const CharPoly c = oracle::char_poly(diag_form(r, t, p));
  return c.c2 - (c.c1 * c.c1 / 4 + 2) + std::pow(std::cos(t) - std::cos(p), 2);
}

double item_ii(double r, double t, double p) {
  const CharPoly c = oracle::char_poly(diag_form(r, t, p));
  return c.c2 - (c.c1 * c.c1 / 4 + 2) - std::pow(r - 1 / r, 2) * (1 - std::pow(std::cos(t), 2));
}

double item_iii(double r, double t, double p) {
  const CharPoly c = oracle::char_poly(diag_form(r, t, p));
  return c.c2 - (c.c1 * c.c1 / 4 - 2) - std::pow(r + 1 / r, 2) * (1 - std::pow(std::cos(t), 2));
}

}  // namespace

TEST(CoefficientLemma, StatedConditionsAreSufficient) {
  EXPECT_NEAR(item_i(1, 0.3, 2.2), 0, 1e-12);
  EXPECT_NEAR(item_i(3, 0, pi), 0, 1e-12);
  EXPECT_NEAR(item_ii(3, 0.8, 0.8), 0, 1e-12);
  EXPECT_NEAR(item_iii(3, 0.8, pi - 0.8), 0, 1e-12);
  EXPECT_GT(std::abs(item_i(2, 0.3, 1.2)), 1e-3);
  EXPECT_GT(std::abs(item_ii(2, 0.3, 1.2)), 1e-3);
  EXPECT_GT(std::abs(item_iii(2, 0.3, 1.2)), 1e-3);
}

// Each of (i)-(iii) also holds on a second surface the proofs drop.
TEST(CoefficientLemma, StatedConditionsAreNotNecessary) {
  // (i): r^2 sin^2(phi) = sin^2(theta)
  EXPECT_NEAR(item_i(2, pi / 2, pi / 6), 0, 1e-12);
  // (ii): r^2 (cos theta + cos phi) = 2 cos theta
  EXPECT_NEAR(item_ii(2, std::acos(-0.4), std::acos(0.2)), 0, 1e-12);
  // (iii): (r^2 + 2) cos theta = r^2 cos phi
  EXPECT_NEAR(item_iii(1, std::acos(0.2), std::acos(0.6)), 0, 1e-12);
}

TEST(FamilyCase, Templates) {
  for (int c = 1; c <= 8; ++c) EXPECT_FALSE(case_template(c).empty());
  EXPECT_TRUE(case_template(9).empty());
  EXPECT_EQ(family_case(DiagonalForm{1, 0, 0}), 6);
  EXPECT_EQ(family_case(DiagonalForm{1, 0.3, pi - 0.3}), 7);
  EXPECT_EQ(family_case(DiagonalForm{2, pi / 2, pi / 2}), 3);
  EXPECT_EQ(family_case(ParabolicForm{0.3}), 8);
}
