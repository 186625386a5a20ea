#include "quatmob/quaternion.hpp"

#include <ostream>

#include "quatmob/error.hpp"

namespace quatmob {

Quaternion q_mul(const Quaternion& p, const Quaternion& q) { return p * q; }

Quaternion q_inverse(const Quaternion& q, double tol) {
  const double n = q.norm();
  if (!(n > tol)) {
    throw Error(ErrorCode::ZeroQuaternion, "cannot invert a quaternion of norm <= tolerance");
  }
  return q.conj() / (n * n);
}

double distance(const Quaternion& p, const Quaternion& q) { return (p - q).norm(); }

ClassRep q_class_rep(const Quaternion& q) {
  // atan2(0, negative) = pi puts negative reals at angle pi.
  return {q.norm(), std::atan2(q.imag_norm(), q.w)};
}

bool class_reps_close(const ClassRep& a, const ClassRep& b, double tol) {
  return std::abs(a.modulus - b.modulus) <= tol && std::abs(a.angle - b.angle) <= tol;
}

bool q_similar(const Quaternion& p, const Quaternion& q, double tol) {
  return class_reps_close(q_class_rep(p), q_class_rep(q), tol);
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
  return os << '(' << q.w << ' ' << q.x << "i " << q.y << "j " << q.z << "k)";
}

std::ostream& operator<<(std::ostream& os, const ClassRep& c) {
  return os << "[r=" << c.modulus << ", angle=" << c.angle << ']';
}

}  // namespace quatmob
