#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "quatmob/error.hpp"
#include "quatmob/quaternion.hpp"

using namespace quatmob;
using std::numbers::pi;

namespace {

void expect_near(const Quaternion& a, const Quaternion& b, double tol = 1e-12) {
  EXPECT_NEAR(a.w, b.w, tol);
  EXPECT_NEAR(a.x, b.x, tol);
  EXPECT_NEAR(a.y, b.y, tol);
  EXPECT_NEAR(a.z, b.z, tol);
}

Quaternion random_q(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  return {n(rng), n(rng), n(rng), n(rng)};
}

}  // namespace

TEST(Quaternion, DefiningRelations) {
  EXPECT_EQ(Quaternion::i() * Quaternion::j(), Quaternion::k());
  EXPECT_EQ(Quaternion::j() * Quaternion::k(), Quaternion::i());
  EXPECT_EQ(Quaternion::k() * Quaternion::i(), Quaternion::j());
  EXPECT_EQ(Quaternion::i() * Quaternion::i(), Quaternion(-1));
  EXPECT_EQ(Quaternion::j() * Quaternion::i(), -Quaternion::k());
}

TEST(Quaternion, ConjugateProduct) {
  EXPECT_EQ(Quaternion(1, 1, 0, 0) * Quaternion(1, -1, 0, 0), Quaternion(2));
}

TEST(Quaternion, JSwapsComplexConjugate) {
  const Quaternion z{2, 3, 0, 0};
  EXPECT_EQ(Quaternion::j() * z, (Quaternion{0, 0, 2, -3}));
  EXPECT_EQ(Quaternion::j() * z, z.conj() * Quaternion::j());

  std::mt19937_64 rng(3);
  std::normal_distribution<double> n;
  for (int k = 0; k < 100; ++k) {
    const Quaternion c{n(rng), n(rng), 0, 0};
    EXPECT_EQ(Quaternion::j() * c, c.conj() * Quaternion::j());
  }
}

TEST(Quaternion, SplitConvention) {
  // q = z1 + z2 j with z1 = w + x i, z2 = y + z i.
  const Quaternion q{1, 2, 3, 4};
  const Quaternion rebuilt = Quaternion::from_complex(q.complex_part()) + Quaternion::from_complex(q.j_part()) * Quaternion::j();
  EXPECT_EQ(rebuilt, q);
  EXPECT_EQ(Quaternion::from_split({1, 2}, {3, 4}), q);
}

TEST(Quaternion, ProductMatchesOracle) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 1000; ++k) {
    const Quaternion p = random_q(rng), q = random_q(rng);
    expect_near(p * q, oracle::mul(p, q), 1e-12);
    EXPECT_NEAR((p * q).norm(), p.norm() * q.norm(), 1e-12 * p.norm() * q.norm());
  }
}

TEST(Quaternion, Inverse) {
  EXPECT_EQ(q_inverse(Quaternion(1)), Quaternion(1));
  expect_near(q_inverse(Quaternion::j()), -Quaternion::j());
  const Quaternion q{2, 2, 0, 0};
  expect_near(q_inverse(q), Quaternion{2, -2, 0, 0} / 8.0);
  expect_near(q * q_inverse(q), Quaternion(1));
  try {
    q_inverse(Quaternion{1e-12, 0, 0, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroQuaternion);
  }
}

TEST(Quaternion, ClassRep) {
  const ClassRep minus_i = q_class_rep(-Quaternion::i());
  EXPECT_NEAR(minus_i.modulus, 1.0, 1e-15);
  EXPECT_NEAR(minus_i.angle, pi / 2, 1e-15);

  const ClassRep three = q_class_rep(Quaternion(3));
  EXPECT_EQ(three.modulus, 3.0);
  EXPECT_EQ(three.angle, 0.0);

  const ClassRep c = q_class_rep(Quaternion{1, 0, 2, -2});
  EXPECT_NEAR(c.modulus, 3.0, 1e-15);
  EXPECT_NEAR(c.angle, std::atan2(2 * std::sqrt(2.0), 1.0), 1e-15);

  EXPECT_NEAR(q_class_rep(Quaternion(-2)).angle, pi, 0.0);
}

TEST(Quaternion, ClassRepIsConjugationInvariant) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 500; ++k) {
    const Quaternion q = random_q(rng);
    Quaternion u = random_q(rng);
    u = u / u.norm();
    const ClassRep a = q_class_rep(q);
    const ClassRep b = q_class_rep(u * q * q_inverse(u));
    EXPECT_NEAR(a.modulus, b.modulus, 1e-12);
    EXPECT_NEAR(a.angle, b.angle, 1e-9);
  }
}

TEST(Quaternion, Similarity) {
  EXPECT_TRUE(q_similar(Quaternion::i(), -Quaternion::i()));
  EXPECT_FALSE(q_similar(Quaternion::i(), Quaternion(1)));
  EXPECT_TRUE(q_similar(Quaternion::j(), Quaternion::k()));
  // conjugation by j exhibits i ~ -i
  expect_near(Quaternion::j() * Quaternion::i() * q_inverse(Quaternion::j()), -Quaternion::i());
}

TEST(Quaternion, SimilarityIsEquivalence) {
  std::mt19937_64 rng(9);
  std::vector<Quaternion> set;
  for (int k = 0; k < 12; ++k) {
    const Quaternion q = random_q(rng);
    set.push_back(q);
    Quaternion u = random_q(rng);
    u = u / u.norm();
    set.push_back(u * q * q_inverse(u));
  }
  for (const auto& a : set) {
    EXPECT_TRUE(q_similar(a, a));
    for (const auto& b : set) {
      EXPECT_EQ(q_similar(a, b), q_similar(b, a));
      for (const auto& c : set) {
        if (q_similar(a, b) && q_similar(b, c)) EXPECT_TRUE(q_similar(a, c));
      }
    }
  }
}
