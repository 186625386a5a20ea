#include <gtest/gtest.h>

#include <numbers>

#include "oracles.hpp"
#include "quatmob/error.hpp"
#include "quatmob/sampling.hpp"
#include "quatmob/spectral.hpp"

using namespace quatmob;
using std::numbers::pi;

namespace {

const Quaternion I = Quaternion::i();

QMatrix2 parabolic(double t) {
  const Quaternion e = Quaternion::polar_i(1, t);
  return {e, Quaternion(1), Quaternion(), e};
}

void expect_class(const EigenClass& c, double modulus, double angle, int mult) {
  EXPECT_NEAR(c.rep.modulus, modulus, 1e-7);
  EXPECT_NEAR(c.rep.angle, angle, 1e-7);
  EXPECT_EQ(c.multiplicity, mult);
}

}  // namespace

TEST(EigenClasses, Diagonal) {
  const EigenSpectrum s = eigenvalue_classes(QMatrix2::diag(2.0 * I, 0.5 * I));
  ASSERT_EQ(s.classes.size(), 2u);
  expect_class(s.classes[0], 2.0, pi / 2, 1);
  expect_class(s.classes[1], 0.5, pi / 2, 1);
}

TEST(EigenClasses, ParabolicBlock) {
  const EigenSpectrum s = eigenvalue_classes(parabolic(0.9));
  ASSERT_EQ(s.classes.size(), 1u);
  expect_class(s.classes[0], 1.0, 0.9, 2);
}

TEST(EigenClasses, ConjugatedJK) {
  for (std::uint64_t k = 0; k < 20; ++k) {
    auto rng = sample_rng(1, 2, k);
    const Quaternion u = random_unit_quaternion(rng);
    const QMatrix2 uu = QMatrix2::diag(u, u);
    const EigenSpectrum s = eigenvalue_classes(uu * QMatrix2::diag(Quaternion::j(), Quaternion::k()) * m_inverse(uu));
    ASSERT_EQ(s.classes.size(), 1u);
    expect_class(s.classes[0], 1.0, pi / 2, 2);
  }
}

TEST(Diagonalizable, Examples) {
  EXPECT_TRUE(is_diagonalizable(QMatrix2::diag(Quaternion{1, 2, 3, 4}, Quaternion{0, 1, 0, 1})));
  EXPECT_FALSE(is_diagonalizable(parabolic(pi / 3)));
  EXPECT_TRUE(is_diagonalizable(QMatrix2::diag(I, -I)));
  EXPECT_TRUE(is_diagonalizable(QMatrix2::identity()));
}

TEST(NormalForm, CanonicalDiagonal) {
  const NormalFormResult r = normal_form(QMatrix2::diag(2.0 * I, 0.5 * I));
  const auto& d = std::get<DiagonalForm>(r.form);
  EXPECT_NEAR(d.r, 2.0, 1e-12);
  EXPECT_NEAR(d.theta, pi / 2, 1e-12);
  EXPECT_NEAR(d.phi, pi / 2, 1e-12);
  EXPECT_LT(distance_inf(r.witness.s, QMatrix2::identity()), 1e-12);
}

TEST(NormalForm, OrderingForcesSwap) {
  const QMatrix2 a = QMatrix2::diag(0.5 * I, 2.0 * I);
  const NormalFormResult r = normal_form(a);
  const auto& d = std::get<DiagonalForm>(r.form);
  EXPECT_NEAR(d.r, 2.0, 1e-12);
  EXPECT_NEAR(r.witness.s.a.norm(), 0.0, 1e-12);
  EXPECT_NEAR(r.witness.s.d.norm(), 0.0, 1e-12);
  EXPECT_NEAR(det_H(r.witness.s), 1.0, 1e-12);
  EXPECT_LT(distance_inf(r.witness.s * materialize(r.form) * m_inverse(r.witness.s), a), 1e-12);
}

TEST(NormalForm, ConjugatedParabolic) {
  for (std::uint64_t k = 0; k < 50; ++k) {
    auto rng = sample_rng(2, 3, k);
    const QMatrix2 u = random_sl_conjugator(rng);
    const QMatrix2 a = u * parabolic(pi / 3) * m_inverse(u);
    const NormalFormResult r = normal_form(a);
    ASSERT_TRUE(is_parabolic(r.form));
    EXPECT_NEAR(std::get<ParabolicForm>(r.form).theta, pi / 3, 1e-6);
    EXPECT_LT(distance_inf(r.witness.s * materialize(r.form) * m_inverse(r.witness.s), a), 1e-8);
    EXPECT_NEAR(det_H(r.witness.s), 1.0, 1e-8);
  }
}

TEST(NormalForm, RejectsNonUnitDeterminant) {
  try {
    normal_form(QMatrix2::diag(Quaternion(2), Quaternion(1)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotUnitDeterminant);
  }
}

TEST(NormalForm, WitnessAndRoundTripOnEveryFamily) {
  for (const std::string& family : family_names()) {
    for (std::uint64_t k = 0; k < 40; ++k) {
      auto rng = sample_rng(4, 0, k);
      const GeneratedSample s = sample_family(family, rng);
      const NormalFormResult r = normal_form(s.matrix);
      const double scale = std::max(1.0, norm_inf(s.matrix));
      EXPECT_LT(distance_inf(r.witness.s * materialize(r.form) * m_inverse(r.witness.s), s.matrix), 1e-8 * scale)
          << family << " #" << k;
      EXPECT_NEAR(det_H(r.witness.s), 1.0, 1e-8);
      EXPECT_LT(char_poly(materialize(r.form)).max_abs_diff(char_poly(s.matrix)), 1e-8 * std::pow(scale, 4));
      EXPECT_EQ(is_parabolic(r.form), is_parabolic(s.form)) << family;
    }
  }
}

TEST(NormalForm, IdempotentOnCanonicalForms) {
  for (const std::string& family : family_names()) {
    auto rng = sample_rng(5, 0, 0);
    const NormalForm f = sample_normal_form(family, rng);
    const NormalFormResult r = normal_form(materialize(f));
    EXPECT_LT(distance_inf(materialize(r.form), materialize(f)), 1e-8) << family;
  }
}

TEST(NormalForm, SpectrumConjugationInvariant) {
  for (std::uint64_t k = 0; k < 50; ++k) {
    auto rng = sample_rng(6, 0, k);
    const GeneratedSample s = sample_family("case-1", rng);
    const QMatrix2 t = random_sl_conjugator(rng);
    const EigenSpectrum a = eigenvalue_classes(s.matrix);
    const EigenSpectrum b = eigenvalue_classes(t * s.matrix * m_inverse(t));
    ASSERT_EQ(a.classes.size(), b.classes.size());
    for (std::size_t i = 0; i < a.classes.size(); ++i) {
      EXPECT_NEAR(a.classes[i].rep.modulus, b.classes[i].rep.modulus, 1e-8);
      EXPECT_NEAR(a.classes[i].rep.angle, b.classes[i].rep.angle, 1e-8);
    }
  }
}

TEST(NormalForm, ParabolicIffSingleUnitClassAndDefective) {
  for (const std::string& family : family_names()) {
    auto rng = sample_rng(7, 0, 1);
    const GeneratedSample s = sample_family(family, rng);
    const EigenSpectrum sp = eigenvalue_classes(s.matrix);
    const bool lhs = is_parabolic(normal_form(s.matrix).form);
    const bool rhs = sp.classes.size() == 1 && std::abs(sp.classes[0].rep.modulus - 1) < 1e-8 && !is_diagonalizable(s.matrix);
    EXPECT_EQ(lhs, rhs) << family;
  }
}

TEST(RightEigenvector, Examples) {
  const QMatrix2 a = QMatrix2::diag(I, Quaternion(1));
  const QVector2 v = right_eigenvector(a, {1, pi / 2});
  EXPECT_NEAR(v.v1.norm(), 1, 1e-12);
  EXPECT_NEAR(v.v2.norm(), 0, 1e-12);
  const QVector2 w = right_eigenvector(a, {1, 0});
  EXPECT_NEAR(w.v1.norm(), 0, 1e-12);
  EXPECT_NEAR(w.v2.norm(), 1, 1e-12);
  try {
    right_eigenvector(a, {2, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotAnEigenclass);
  }
}

TEST(RightEigenvector, ConjugatedHyperbolic) {
  auto rng = sample_rng(8, 0, 0);
  const QMatrix2 s = random_sl_conjugator(rng);
  const QMatrix2 a = s * QMatrix2::diag(Quaternion::polar_i(2, 0.4), Quaternion::polar_i(0.5, 1.1)) * m_inverse(s);
  for (const ClassRep c : {ClassRep{2, 0.4}, ClassRep{0.5, 1.1}}) {
    const QVector2 v = right_eigenvector(a, c);
    const QVector2 av = a * v, vl = v.times(c.as_quaternion());
    EXPECT_LT((av.v1 - vl.v1).norm() + (av.v2 - vl.v2).norm(), 1e-9);
  }
}
