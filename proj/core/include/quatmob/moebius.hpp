#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "quatmob/qmatrix.hpp"
#include "quatmob/quaternion.hpp"
#include "quatmob/spectral.hpp"

namespace quatmob {

/// A point of H u {inf}.
class ExtendedQuaternion {
 public:
  ExtendedQuaternion() = default;
  ExtendedQuaternion(const Quaternion& q) : value_(q) {}  // NOLINT(google-explicit-constructor)

  static ExtendedQuaternion infinity() { return ExtendedQuaternion(std::nullopt); }

  bool is_infinity() const { return !value_.has_value(); }
  /// Throws Error{DomainError} at infinity.
  const Quaternion& value() const;

  friend bool operator==(const ExtendedQuaternion&, const ExtendedQuaternion&) = default;

 private:
  explicit ExtendedQuaternion(std::optional<Quaternion> v) : value_(v) {}
  std::optional<Quaternion> value_ = Quaternion();
};

/// 0 when both are infinity, +inf when exactly one is, |p - q| otherwise.
double distance(const ExtendedQuaternion& p, const ExtendedQuaternion& q);

/// z -> (a z + b)(c z + d)^-1. Finite z maps to inf when |cz + d| <= tol (1 + |z|);
/// inf maps to a c^-1 when |c| > tol and to inf otherwise.
/// Throws Error{SingularMatrix} when det_H(A) <= tol.
ExtendedQuaternion apply_moebius(const QMatrix2& m, const ExtendedQuaternion& z, double tol = kDefaultTol);

/// Boundary fixed points induced by right eigenvectors v -> v1 v2^-1 (inf when
/// |v2| <= tol |v|): two for diagonalizable, one for parabolic elements.
/// Throws Error{CentralElement} for +-I.
std::vector<ExtendedQuaternion> fixed_points(const QMatrix2& m, double tol = kClassifyTol);

std::ostream& operator<<(std::ostream& os, const ExtendedQuaternion& z);

}  // namespace quatmob
