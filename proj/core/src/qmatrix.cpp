#include "quatmob/qmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "quatmob/error.hpp"

namespace quatmob {

namespace {

using cplx = std::complex<double>;

double frobenius_sq(const QMatrix2& m) { return m.a.norm_sq() + m.b.norm_sq() + m.c.norm_sq() + m.d.norm_sq(); }

// Elementary symmetric polynomials e1..e4 of four values.
std::array<cplx, 4> elementary_symmetric(const std::array<cplx, 4>& r) {
  std::array<cplx, 5> e{cplx(1), 0, 0, 0, 0};
  for (const auto& root : r) {
    for (int k = 4; k >= 1; --k) e[k] += e[k - 1] * root;
  }
  return {e[1], e[2], e[3], e[4]};
}

CharPoly to_real(const std::array<cplx, 4>& e, double radius, double tol) {
  for (int k = 0; k < 4; ++k) {
    const double scale = std::pow(1.0 + radius, k + 1);
    if (std::abs(e[k].imag()) > tol * scale) {
      throw Error(ErrorCode::NonRealCoefficients,
                  "characteristic coefficient e" + std::to_string(k + 1) + " has imaginary residue " +
                      std::to_string(e[k].imag()));
    }
  }
  return {e[0].real(), e[1].real(), e[2].real(), e[3].real()};
}

}  // namespace

QMatrix2 m_mul(const QMatrix2& lhs, const QMatrix2& rhs) { return lhs * rhs; }

double norm_inf(const QMatrix2& m) { return std::max(m.a.norm() + m.b.norm(), m.c.norm() + m.d.norm()); }

double distance_inf(const QMatrix2& x, const QMatrix2& y) { return norm_inf(x - y); }

CMatrix4 phi_embed(const QMatrix2& m) {
  const std::array<Quaternion, 4> e{m.a, m.b, m.c, m.d};
  CMatrix4 out;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      const Quaternion& q = e[2 * r + c];
      const cplx z1 = q.complex_part();
      const cplx z2 = q.j_part();
      out(r, c) = z1;
      out(r, c + 2) = z2;
#ifdef QUATMOB_MUTATE_PHI_SIGN
      out(r + 2, c) = std::conj(z2);  // deliberately wrong sign, used only by the mutation test
#else
      out(r + 2, c) = -std::conj(z2);
#endif
      out(r + 2, c + 2) = std::conj(z1);
    }
  }
  return out;
}

QMatrix2 phi_unembed(const CMatrix4& m) {
  auto entry = [&](int r, int c) { return Quaternion::from_split(m(r, c), m(r, c + 2)); };
  return {entry(0, 0), entry(0, 1), entry(1, 0), entry(1, 1)};
}

CVector4 psi_embed(const QVector2& v) {
  CVector4 u;
  u << v.v1.complex_part(), v.v2.complex_part(), -std::conj(v.v1.j_part()), -std::conj(v.v2.j_part());
  return u;
}

QVector2 psi_unembed(const CVector4& u) {
  return {Quaternion::from_split(u(0), -std::conj(u(2))), Quaternion::from_split(u(1), -std::conj(u(3)))};
}

double det_H(const QMatrix2& m, double tol) {
  const cplx det = Eigen::PartialPivLU<CMatrix4>(phi_embed(m)).determinant();
  const double f = frobenius_sq(m);
  const double scale = std::max(1.0, f * f);
  if (std::abs(det.imag()) > tol * scale || det.real() < -tol * scale) {
    throw Error(ErrorCode::NonRealDeterminant,
                "det(phi(A)) = (" + std::to_string(det.real()) + ", " + std::to_string(det.imag()) + ")");
  }
  return std::max(0.0, det.real());
}

QMatrix2 m_inverse(const QMatrix2& m, double tol) {
  // tol = 0 asks only for exact singularity; realness still needs slack.
  if (det_H(m, std::max(tol, kDefaultTol)) <= tol) throw Error(ErrorCode::SingularMatrix, "det_H(A) <= tolerance");
  const CMatrix4 inv = Eigen::PartialPivLU<CMatrix4>(phi_embed(m)).inverse();
  return phi_unembed(inv);
}

double CharPoly::max_abs_diff(const CharPoly& o) const {
  return std::max({std::abs(c3 - o.c3), std::abs(c2 - o.c2), std::abs(c1 - o.c1), std::abs(c0 - o.c0)});
}

CharPoly char_poly(const QMatrix2& m, double tol) {
  Eigen::ComplexEigenSolver<CMatrix4> solver(phi_embed(m), /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::NumericalBreakdown, "eigenvalue iteration failed");
  std::array<cplx, 4> roots;
  double radius = 0.0;
  for (int k = 0; k < 4; ++k) {
    roots[k] = solver.eigenvalues()(k);
    radius = std::max(radius, std::abs(roots[k]));
  }
  return to_real(elementary_symmetric(roots), radius, tol);
}

CharPoly char_poly_newton(const QMatrix2& m, double tol) {
  const CMatrix4 phi = phi_embed(m);
  CMatrix4 power = phi;
  std::array<cplx, 4> p;
  for (int k = 0; k < 4; ++k) {
    p[k] = power.trace();
    if (k < 3) power = (power * phi).eval();
  }
  std::array<cplx, 4> e;
  e[0] = p[0];
  e[1] = (e[0] * p[0] - p[1]) / 2.0;
  e[2] = (e[1] * p[0] - e[0] * p[1] + p[2]) / 3.0;
  e[3] = (e[2] * p[0] - e[1] * p[1] + e[0] * p[2] - p[3]) / 4.0;
  return to_real(e, std::sqrt(2.0 * frobenius_sq(m)), tol);
}

QMatrix2 sl_normalize(const QMatrix2& m, double tol) {
  const double det = det_H(m, tol);
  if (det <= tol) throw Error(ErrorCode::SingularMatrix, "det_H(A) <= tolerance");
  return (1.0 / std::sqrt(std::sqrt(det))) * m;
}

std::ostream& operator<<(std::ostream& os, const QMatrix2& m) {
  return os << "[[" << m.a << ", " << m.b << "], [" << m.c << ", " << m.d << "]]";
}

std::ostream& operator<<(std::ostream& os, const CharPoly& cp) {
  return os << "{c3=" << cp.c3 << ", c2=" << cp.c2 << ", c1=" << cp.c1 << ", c0=" << cp.c0 << '}';
}

}  // namespace quatmob
