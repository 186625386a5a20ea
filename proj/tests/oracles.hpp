#pragma once

// Independent reference computations. Nothing here goes through phi_embed,
// Eigen's eigen-solvers or the library's own products.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numeric>

#include "quatmob/qmatrix.hpp"

namespace oracle {

using cplx = std::complex<double>;
using quatmob::QMatrix2;
using quatmob::Quaternion;

// Hamilton product from the left-multiplication matrix of p.
inline Quaternion mul(const Quaternion& p, const Quaternion& q) {
  const double L[4][4] = {{p.w, -p.x, -p.y, -p.z},
                          {p.x, p.w, -p.z, p.y},
                          {p.y, p.z, p.w, -p.x},
                          {p.z, -p.y, p.x, p.w}};
  const double v[4] = {q.w, q.x, q.y, q.z};
  double out[4] = {0, 0, 0, 0};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out[r] += L[r][c] * v[c];
  return {out[0], out[1], out[2], out[3]};
}

inline Quaternion add(const Quaternion& p, const Quaternion& q) { return {p.w + q.w, p.x + q.x, p.y + q.y, p.z + q.z}; }

inline QMatrix2 mul(const QMatrix2& x, const QMatrix2& y) {
  return {add(mul(x.a, y.a), mul(x.b, y.c)), add(mul(x.a, y.b), mul(x.b, y.d)),
          add(mul(x.c, y.a), mul(x.d, y.c)), add(mul(x.c, y.b), mul(x.d, y.d))};
}

// 4x4 complex matrix written out by hand from q = z1 + z2 j.
using C4 = std::array<std::array<cplx, 4>, 4>;

inline C4 complex_adjoint(const QMatrix2& m) {
  const Quaternion e[2][2] = {{m.a, m.b}, {m.c, m.d}};
  C4 out{};
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      const cplx z1(e[r][c].w, e[r][c].x);
      const cplx z2(e[r][c].y, e[r][c].z);
      out[r][c] = z1;
      out[r][c + 2] = z2;
      out[r + 2][c] = -std::conj(z2);
      out[r + 2][c + 2] = std::conj(z1);
    }
  }
  return out;
}

// Leibniz expansion over all 24 permutations.
inline cplx det4(const C4& a) {
  std::array<int, 4> p{0, 1, 2, 3};
  cplx total = 0;
  do {
    int inversions = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) inversions += p[i] > p[j];
    cplx term = inversions % 2 ? -1.0 : 1.0;
    for (int i = 0; i < 4; ++i) term *= a[i][p[i]];
    total += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

inline double det_h(const QMatrix2& m) { return det4(complex_adjoint(m)).real(); }

// Characteristic polynomial x^4 - c3 x^3 + c2 x^2 - c1 x + c0 by evaluating
// det(x I - M) at x = 0, +-1, +-2 and solving for the coefficients.
inline quatmob::CharPoly char_poly(const QMatrix2& m) {
  const C4 a = complex_adjoint(m);
  const auto p = [&](double x) {
    C4 b = a;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) b[i][j] = (i == j ? x : 0.0) - a[i][j];
    return det4(b).real();
  };
  const double p0 = p(0), p1 = p(1), pm1 = p(-1), p2 = p(2), pm2 = p(-2);
  // p(x) - x^4 = -c3 x^3 + c2 x^2 - c1 x + c0
  const double e1 = p1 - 1, em1 = pm1 - 1, e2 = p2 - 16, em2 = pm2 - 16;
  const double c0 = p0;
  const double c2 = ((e1 + em1) / 2 - c0);
  const double odd1 = (e1 - em1) / 2;  // -c3 - c1
  const double odd2 = (e2 - em2) / 4;  // -4 c3 - c1
  const double c3 = -(odd2 - odd1) / 3;
  const double c1 = -odd1 - c3;
  return {c3, c2, c1, c0};
}

inline double dist(const QMatrix2& x, const QMatrix2& y) {
  const Quaternion d[4] = {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
  double out = 0;
  for (const Quaternion& q : d) out = std::max({out, std::abs(q.w), std::abs(q.x), std::abs(q.y), std::abs(q.z)});
  return out;
}

}  // namespace oracle
