#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quatmob/qmatrix.hpp"
#include "quatmob/spectral.hpp"

namespace quatmob {

enum class DynamicalType { Elliptic, Parabolic, Hyperbolic };

std::string_view to_string(DynamicalType t) noexcept;

/// Hyperbolic if an eigenclass modulus differs from 1 by more than tol,
/// Elliptic if additionally diagonalizable, Parabolic otherwise.
DynamicalType dynamical_type(const QMatrix2& m, double tol = kClassifyTol);

/// Characteristic coefficients of diag(r e^{i theta}, r^-1 e^{i phi}) in closed form:
///   c3 = 2 (r cos theta + r^-1 cos phi)
///   c2 = 4 cos theta cos phi + r^2 + r^-2
///   c1 = 2 (r^-1 cos theta + r cos phi),  c0 = 1.
/// Throws Error{DomainError} for r <= 0 or angles outside [0, pi].
CharPoly coeff_identities(double r, double theta, double phi);

/// Boundary sub-flags reported next to the case id.
struct BoundaryFlags {
  bool angle_real = false;           // theta in {0, pi}
  bool angle_zero = false;           // theta = 0 (case 6, c1 = 4)
  bool angle_pi = false;             // theta = pi (case 6, c1 = -4)
  bool angle_half_pi = false;        // theta = pi/2 (case 7, c2 = 2)
  bool c1_at_four = false;           // |c1| within tol of 4 where cases 4/6/8 meet
  bool near_case_boundary = false;   // some predicate was decided within tol
};

/// Case 1..8 of the coefficient characterization of SL(2,H) conjugacy families:
///   1 diag(r e^{it}, r^-1 e^{ip}), r != 1, t != p, pi - p      c1^2 != c3^2
///   2 diag(r e^{it}, r^-1 e^{i(pi-t)}), r != 1, t != pi/2      c1 = -c3 != 0
///   3 diag(r i, r^-1 i), r != 1                                c1 = c3 = 0, c2 > c1^2/4 + 2
///   4 diag(r e^{it}, r^-1 e^{it}), r != 1, t != pi/2           c1 = c3 != 0, c2 >= c1^2/4 + 2
///   5 diag(e^{it}, e^{ip}), t != p, pi - p                     c1 = c3 != 0, c2 < c1^2/4 + 2
///   6 diag(e^{it}, e^{it}), t != pi/2                          c1 = c3 != 0, c2 = c1^2/4 + 2, |c1| <= 4
///   7 diag(e^{it}, e^{i(pi-t)})                                c1 = c3 = 0, -2 <= c2 <= 2
///   8 (e^{it} 1; 0 e^{it})                                     as 6, non-diagonalizable
struct AlgebraicClass {
  int case_id = 0;
  std::string representative;
  /// Parameters realized by the roots of the polynomial; phi is unset for case 8.
  double r = 1.0;
  double theta = 0.0;
  std::optional<double> phi;
  BoundaryFlags flags;
};

/// Evaluates the case predicates in a fixed order. `diagonalizable` only
/// separates case 8 from its diagonalizable twins.
/// Throws Error{DomainError} when |c0 - 1| > tol and
/// Error{InconsistentInvariants} when no case matches.
AlgebraicClass algebraic_class(const CharPoly& cp, bool diagonalizable, double tol = kClassifyTol);

/// Every case whose defining predicate holds, each evaluated on its own
/// (no ordering). A partition yields exactly one entry away from boundaries.
/// Cases 6 and 7 carry the diagonalizable qualifier, case 8 its negation;
/// without it the parabolic element with theta = pi/2 would match 7 and 8.
std::vector<int> matching_cases(const CharPoly& cp, bool diagonalizable, double tol = kClassifyTol);

/// The case a canonical normal form belongs to.
int family_case(const NormalForm& form, double tol = kClassifyTol);

std::string_view case_template(int case_id);

std::ostream& operator<<(std::ostream& os, DynamicalType t);

}  // namespace quatmob
