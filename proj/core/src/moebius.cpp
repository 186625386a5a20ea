#include "quatmob/moebius.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include "quatmob/error.hpp"

namespace quatmob {

namespace {

ExtendedQuaternion column_point(const QVector2& v, double tol) {
  if (v.v2.norm() <= tol * v.norm()) return ExtendedQuaternion::infinity();
  return v.v1 * q_inverse(v.v2, 0.0);
}

}  // namespace

const Quaternion& ExtendedQuaternion::value() const {
  if (!value_) throw Error(ErrorCode::DomainError, "the point at infinity has no quaternion value");
  return *value_;
}

double distance(const ExtendedQuaternion& p, const ExtendedQuaternion& q) {
  if (p.is_infinity() && q.is_infinity()) return 0.0;
  if (p.is_infinity() || q.is_infinity()) return std::numeric_limits<double>::infinity();
  return distance(p.value(), q.value());
}

ExtendedQuaternion apply_moebius(const QMatrix2& m, const ExtendedQuaternion& z, double tol) {
  if (!(det_H(m, tol) > tol)) throw Error(ErrorCode::SingularMatrix, "Moebius map of a singular matrix");
  if (z.is_infinity()) {
    if (m.c.norm() > tol) return m.a * q_inverse(m.c, 0.0);
    return ExtendedQuaternion::infinity();
  }
  const Quaternion& q = z.value();
  const Quaternion den = m.c * q + m.d;
  if (den.norm() <= tol * (1.0 + q.norm())) return ExtendedQuaternion::infinity();
  return (m.a * q + m.b) * q_inverse(den, 0.0);
}

std::vector<ExtendedQuaternion> fixed_points(const QMatrix2& m, double tol) {
  const NormalFormResult nf = normal_form(m, tol);
  const QMatrix2& s = nf.witness.s;
  std::vector<ExtendedQuaternion> out{column_point(s.column(0), tol)};
  if (const auto* d = std::get_if<DiagonalForm>(&nf.form)) {
    const bool center = std::abs(d->r - 1.0) <= tol && std::abs(d->theta - d->phi) <= tol &&
                        (d->theta <= tol || d->theta >= std::numbers::pi - tol);
    if (center) throw Error(ErrorCode::CentralElement, "every point is fixed by +-I");
    const ExtendedQuaternion second = column_point(s.column(1), tol);
    const double scale = 1.0 + (second.is_infinity() ? 0.0 : second.value().norm());
    if (distance(out.front(), second) > tol * scale) out.push_back(second);
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const ExtendedQuaternion& z) {
  if (z.is_infinity()) return os << "inf";
  return os << z.value();
}

}  // namespace quatmob
