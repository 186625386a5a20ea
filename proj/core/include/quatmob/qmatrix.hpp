#pragma once

#include <array>
#include <complex>
#include <iosfwd>

#include <Eigen/Core>

#include "quatmob/quaternion.hpp"

namespace quatmob {

using CMatrix4 = Eigen::Matrix<std::complex<double>, 4, 4>;
using CVector4 = Eigen::Matrix<std::complex<double>, 4, 1>;

/// Column vector in H^2.
struct QVector2 {
  Quaternion v1;
  Quaternion v2;

  double norm() const { return std::sqrt(v1.norm_sq() + v2.norm_sq()); }
  /// Right scalar multiplication v * s.
  QVector2 times(const Quaternion& s) const { return {v1 * s, v2 * s}; }
};

/// 2x2 quaternionic matrix (a b; c d), acting on column vectors from the
/// left and on H u {inf} by z -> (az+b)(cz+d)^-1.
struct QMatrix2 {
  Quaternion a;
  Quaternion b;
  Quaternion c;
  Quaternion d;

  static constexpr QMatrix2 identity() { return {Quaternion(1), Quaternion(), Quaternion(), Quaternion(1)}; }
  static constexpr QMatrix2 diag(const Quaternion& p, const Quaternion& q) { return {p, Quaternion(), Quaternion(), q}; }
  static constexpr QMatrix2 antidiag(const Quaternion& p, const Quaternion& q) { return {Quaternion(), p, q, Quaternion()}; }
  /// Matrix whose columns are u and v.
  static constexpr QMatrix2 from_columns(const QVector2& u, const QVector2& v) { return {u.v1, v.v1, u.v2, v.v2}; }

  constexpr QVector2 column(int idx) const { return idx == 0 ? QVector2{a, c} : QVector2{b, d}; }

  constexpr QMatrix2 operator-() const { return {-a, -b, -c, -d}; }
  friend constexpr QMatrix2 operator+(const QMatrix2& x, const QMatrix2& y) { return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d}; }
  friend constexpr QMatrix2 operator-(const QMatrix2& x, const QMatrix2& y) { return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d}; }
  friend constexpr QMatrix2 operator*(double s, const QMatrix2& m) { return {s * m.a, s * m.b, s * m.c, s * m.d}; }
  friend constexpr QMatrix2 operator*(const QMatrix2& x, const QMatrix2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend constexpr QVector2 operator*(const QMatrix2& m, const QVector2& v) { return {m.a * v.v1 + m.b * v.v2, m.c * v.v1 + m.d * v.v2}; }
  friend constexpr bool operator==(const QMatrix2&, const QMatrix2&) = default;
};

QMatrix2 m_mul(const QMatrix2& lhs, const QMatrix2& rhs);

/// Maximum absolute row sum, with |q| as the entry magnitude.
double norm_inf(const QMatrix2& m);
double distance_inf(const QMatrix2& x, const QMatrix2& y);

/// Complex embedding: with A = A1 + A2 j (A1, A2 complex 2x2),
/// phi(A) = (A1 A2; -conj(A2) conj(A1)).
CMatrix4 phi_embed(const QMatrix2& m);

/// Left inverse of phi_embed: reads A1 and A2 from the top block row.
QMatrix2 phi_unembed(const CMatrix4& m);

/// Maps v = v1 + v2 j (v1, v2 in C^2) to (v1; -conj(v2)). Satisfies
/// phi(A) psi(v) = psi(A v) and psi(v lambda) = psi(v) lambda for complex lambda.
CVector4 psi_embed(const QVector2& v);
QVector2 psi_unembed(const CVector4& u);

/// Study determinant det(phi(A)), real and non-negative.
/// Throws Error{NonRealDeterminant} if the computed value is not real within tol.
double det_H(const QMatrix2& m, double tol = kDefaultTol);

/// Throws Error{SingularMatrix} when det_H(m) <= tol.
QMatrix2 m_inverse(const QMatrix2& m, double tol = kDefaultTol);

/// Coefficients of x^4 - c3 x^3 + c2 x^2 - c1 x + c0.
struct CharPoly {
  double c3 = 0.0;
  double c2 = 0.0;
  double c1 = 0.0;
  double c0 = 0.0;

  double max_abs_diff(const CharPoly& o) const;
};

/// Characteristic polynomial of phi(A) via the eigenvalues of phi(A).
/// Throws Error{NonRealCoefficients} if an imaginary residue exceeds tol.
CharPoly char_poly(const QMatrix2& m, double tol = kDefaultTol);

/// Same polynomial via traces of powers and Newton's identities.
CharPoly char_poly_newton(const QMatrix2& m, double tol = kDefaultTol);

/// A / det_H(A)^{1/4}. Throws Error{SingularMatrix} when det_H(A) <= tol.
QMatrix2 sl_normalize(const QMatrix2& m, double tol = kDefaultTol);

std::ostream& operator<<(std::ostream& os, const QMatrix2& m);
std::ostream& operator<<(std::ostream& os, const CharPoly& cp);

}  // namespace quatmob
