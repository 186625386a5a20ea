#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <iosfwd>

namespace quatmob {

/// Absolute tolerance used for unit-scale comparisons unless a caller
/// passes its own.
inline constexpr double kDefaultTol = 1e-9;

/// Hamilton quaternion w + x i + y j + z k.
struct Quaternion {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}
  constexpr explicit Quaternion(double real) : w(real) {}

  static constexpr Quaternion i() { return {0, 1, 0, 0}; }
  static constexpr Quaternion j() { return {0, 0, 1, 0}; }
  static constexpr Quaternion k() { return {0, 0, 0, 1}; }

  /// Embeds a complex number a + b i.
  static constexpr Quaternion from_complex(std::complex<double> c) { return {c.real(), c.imag(), 0, 0}; }

  /// Builds z1 + z2 j. With z1 = w + x i and z2 = y + z i this is exactly
  /// w + x i + y j + z k; every embedding in the library relies on it.
  static constexpr Quaternion from_split(std::complex<double> z1, std::complex<double> z2) {
    return {z1.real(), z1.imag(), z2.real(), z2.imag()};
  }

  /// r e^{i theta}
  static Quaternion polar_i(double r, double theta) { return {r * std::cos(theta), r * std::sin(theta), 0, 0}; }

  constexpr std::complex<double> complex_part() const { return {w, x}; }
  constexpr std::complex<double> j_part() const { return {y, z}; }

  constexpr double real() const { return w; }
  constexpr Quaternion imag() const { return {0, x, y, z}; }
  constexpr Quaternion conj() const { return {w, -x, -y, -z}; }
  constexpr double norm_sq() const { return w * w + x * x + y * y + z * z; }
  double norm() const { return std::hypot(std::hypot(w, x), std::hypot(y, z)); }
  double imag_norm() const { return std::hypot(x, std::hypot(y, z)); }

  constexpr std::array<double, 4> components() const { return {w, x, y, z}; }

  constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }
  constexpr Quaternion& operator+=(const Quaternion& o) {
    w += o.w; x += o.x; y += o.y; z += o.z;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& o) {
    w -= o.w; x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
  constexpr Quaternion& operator*=(double s) {
    w *= s; x *= s; y *= s; z *= s;
    return *this;
  }

  friend constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
  friend constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
  friend constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
  friend constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }
  friend constexpr Quaternion operator/(Quaternion a, double s) { return a *= (1.0 / s); }

  // Hamilton product, non-commutative.
  friend constexpr Quaternion operator*(const Quaternion& p, const Quaternion& q) {
    return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
            p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
            p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
            p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
  }

  friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;
};

Quaternion q_mul(const Quaternion& p, const Quaternion& q);

/// Throws Error{ZeroQuaternion} when |q| <= tol.
Quaternion q_inverse(const Quaternion& q, double tol = kDefaultTol);

double distance(const Quaternion& p, const Quaternion& q);

/// Similarity-class representative r e^{i angle}, angle in [0, pi].
struct ClassRep {
  double modulus = 0.0;
  double angle = 0.0;

  std::complex<double> as_complex() const { return std::polar(modulus, angle); }
  Quaternion as_quaternion() const { return Quaternion::from_complex(as_complex()); }

  friend bool operator==(const ClassRep&, const ClassRep&) = default;
};

/// modulus = |q|, angle = atan2(|Im q|, Re q).
ClassRep q_class_rep(const Quaternion& q);

bool class_reps_close(const ClassRep& a, const ClassRep& b, double tol);

/// True iff p and q are conjugate in H, compared through their class reps.
bool q_similar(const Quaternion& p, const Quaternion& q, double tol = kDefaultTol);

std::ostream& operator<<(std::ostream& os, const Quaternion& q);
std::ostream& operator<<(std::ostream& os, const ClassRep& c);

}  // namespace quatmob
