#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "quatmob/error.hpp"
#include "quatmob/qmatrix.hpp"
#include "quatmob/sampling.hpp"

using namespace quatmob;
using std::numbers::pi;

namespace {

QMatrix2 random_matrix(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  auto q = [&] { return Quaternion{n(rng), n(rng), n(rng), n(rng)}; };
  return {q(), q(), q(), q()};
}

const Quaternion J = Quaternion::j();

}  // namespace

TEST(QMatrix, ProductMatchesOracle) {
  std::mt19937_64 rng(1);
  for (int k = 0; k < 200; ++k) {
    const QMatrix2 a = random_matrix(rng), b = random_matrix(rng);
    EXPECT_LT(oracle::dist(a * b, oracle::mul(a, b)), 1e-12);
  }
  const QMatrix2 a = random_matrix(rng);
  EXPECT_EQ(QMatrix2::identity() * a, a);
}

TEST(QMatrix, ReverserConjugation) {
  const double t = 0.7;
  const QMatrix2 g = QMatrix2::diag(J, J);
  const QMatrix2 a = QMatrix2::diag(Quaternion::polar_i(1, t), Quaternion::polar_i(1, t));
  const QMatrix2 expect = QMatrix2::diag(Quaternion::polar_i(1, -t), Quaternion::polar_i(1, -t));
  EXPECT_LT(distance_inf(g * a * m_inverse(g), expect), 1e-15);
}

TEST(QMatrix, AntidiagonalJSquares) {
  const QMatrix2 g = QMatrix2::antidiag(J, J);
  EXPECT_EQ(g * g, QMatrix2::diag(Quaternion(-1), Quaternion(-1)));
}

TEST(QMatrix, Inverse) {
  const Quaternion p{1, 2, 0, -1}, q{0, 0.5, 3, 0};
  EXPECT_LT(distance_inf(m_inverse(QMatrix2::diag(p, q)), QMatrix2::diag(q_inverse(p), q_inverse(q))), 1e-14);

  const double t = pi / 3;
  const Quaternion e = Quaternion::polar_i(1, t);
  const QMatrix2 n{e, Quaternion(1), Quaternion(), e};
  const QMatrix2 expect{Quaternion::polar_i(1, -t), -Quaternion::polar_i(1, -2 * t), Quaternion(), Quaternion::polar_i(1, -t)};
  EXPECT_LT(distance_inf(m_inverse(n), expect), 1e-14);
  EXPECT_LT(distance_inf(oracle::mul(n, expect), QMatrix2::identity()), 1e-14);

  std::mt19937_64 rng(2);
  for (int k = 0; k < 200; ++k) {
    const QMatrix2 a = random_matrix(rng);
    EXPECT_LT(distance_inf(oracle::mul(a, m_inverse(a)), QMatrix2::identity()), 1e-10);
  }
}

TEST(QMatrix, SingularInverseThrows) {
  const QMatrix2 s{Quaternion(1), J, Quaternion(1), J};
  try {
    m_inverse(s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularMatrix);
  }
}

TEST(Embedding, Examples) {
  EXPECT_TRUE(phi_embed(QMatrix2::identity()).isApprox(CMatrix4::Identity()));
  CMatrix4 expect = CMatrix4::Zero();
  expect.block<2, 2>(0, 2) = Eigen::Matrix2cd::Identity();
  expect.block<2, 2>(2, 0) = -Eigen::Matrix2cd::Identity();
  EXPECT_EQ(phi_embed(QMatrix2::diag(J, J)), expect);
}

TEST(Embedding, MatchesHandWrittenAdjoint) {
  std::mt19937_64 rng(4);
  const QMatrix2 a = random_matrix(rng);
  const CMatrix4 phi = phi_embed(a);
  const oracle::C4 ref = oracle::complex_adjoint(a);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) EXPECT_EQ(phi(r, c), ref[r][c]);
  EXPECT_EQ(phi_unembed(phi), a);
}

TEST(Embedding, Multiplicative) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 500; ++k) {
    const QMatrix2 a = random_matrix(rng), b = random_matrix(rng);
    EXPECT_LT((phi_embed(oracle::mul(a, b)) - phi_embed(a) * phi_embed(b)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Embedding, VectorIntertwining) {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> n;
  for (int k = 0; k < 100; ++k) {
    const QMatrix2 a = random_matrix(rng);
    const QVector2 v{{n(rng), n(rng), n(rng), n(rng)}, {n(rng), n(rng), n(rng), n(rng)}};
    const std::complex<double> lambda(n(rng), n(rng));
    EXPECT_LT((phi_embed(a) * psi_embed(v) - psi_embed(a * v)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((psi_embed(v.times(Quaternion::from_complex(lambda))) - psi_embed(v) * lambda).cwiseAbs().maxCoeff(), 1e-12);
    const QVector2 back = psi_unembed(psi_embed(v));
    EXPECT_EQ(back.v1, v.v1);
    EXPECT_EQ(back.v2, v.v2);
  }
}

TEST(StudyDeterminant, Examples) {
  EXPECT_NEAR(det_H(QMatrix2::identity()), 1.0, 1e-15);
  EXPECT_NEAR(det_H(QMatrix2::diag(Quaternion(2), Quaternion(1))), 4.0, 1e-14);
  EXPECT_NEAR(det_H(QMatrix2::diag(J, J)), 1.0, 1e-15);
}

TEST(StudyDeterminant, MatchesLeibnizAndIsMultiplicative) {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 1000; ++k) {
    const QMatrix2 a = random_matrix(rng), b = random_matrix(rng);
    const double da = det_H(a), db = det_H(b);
    EXPECT_GE(da, 0.0);
    EXPECT_NEAR(da, oracle::det_h(a), 1e-9 * std::max(1.0, da));
    EXPECT_NEAR(det_H(a * b), da * db, 1e-9 * std::max(1.0, da * db));
  }
}

TEST(CharPoly, Examples) {
  const CharPoly id = char_poly(QMatrix2::identity());
  EXPECT_LT(id.max_abs_diff({4, 6, 4, 1}), 1e-12);
  EXPECT_LT(char_poly(QMatrix2::diag(Quaternion::i(), Quaternion::i())).max_abs_diff({0, 2, 0, 1}), 1e-12);
  EXPECT_LT(char_poly(QMatrix2::diag(2.0 * Quaternion::i(), 0.5 * Quaternion::i())).max_abs_diff({0, 17.0 / 4, 0, 1}), 1e-12);
}

TEST(CharPoly, MatchesInterpolationOracle) {
  std::mt19937_64 rng(8);
  for (int k = 0; k < 500; ++k) {
    const QMatrix2 a = random_matrix(rng);
    const CharPoly ref = oracle::char_poly(a);
    const double scale = std::pow(std::max(1.0, norm_inf(a)), 4);
    EXPECT_LT(char_poly(a).max_abs_diff(ref) / scale, 1e-10);
    EXPECT_LT(char_poly_newton(a).max_abs_diff(ref) / scale, 1e-10);
  }
}

TEST(CharPoly, ConjugationInvariant) {
  for (std::uint64_t k = 0; k < 300; ++k) {
    auto rng = sample_rng(3, 1, k);
    const QMatrix2 a = random_matrix(rng);
    const QMatrix2 s = random_sl_conjugator(rng);
    const double scale = std::pow(std::max(1.0, norm_inf(a)), 4);
    EXPECT_LT(char_poly(s * a * m_inverse(s)).max_abs_diff(char_poly(a)) / scale, 1e-8);
  }
}

TEST(SlNormalize, Examples) {
  EXPECT_EQ(sl_normalize(QMatrix2::identity()), QMatrix2::identity());
  const QMatrix2 n = sl_normalize(QMatrix2::diag(Quaternion(2), Quaternion(1)));
  EXPECT_LT(distance_inf(n, QMatrix2::diag(Quaternion(std::sqrt(2.0)), Quaternion(1 / std::sqrt(2.0)))), 1e-14);
  EXPECT_NEAR(det_H(QMatrix2::diag(Quaternion(3), Quaternion(3))), 81.0, 1e-12);
  EXPECT_LT(distance_inf(sl_normalize(QMatrix2::diag(Quaternion(3), Quaternion(3))), QMatrix2::identity()), 1e-14);
}

TEST(SlNormalize, UnitConstantTerm) {
  std::mt19937_64 rng(10);
  for (int k = 0; k < 1000; ++k) {
    EXPECT_NEAR(char_poly(sl_normalize(random_matrix(rng))).c0, 1.0, 1e-9);
  }
}
