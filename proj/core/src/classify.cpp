#include "quatmob/classify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <vector>

#include <Eigen/Eigenvalues>

#include "quatmob/error.hpp"

namespace quatmob {

namespace {

using std::numbers::pi;

struct RootRep {
  double modulus;
  double angle;
};

// Class reps of the four roots of x^4 - c3 x^3 + c2 x^2 - c1 x + c0.
std::vector<RootRep> root_reps(const CharPoly& cp) {
  Eigen::Matrix4cd companion = Eigen::Matrix4cd::Zero();
  companion(0, 0) = cp.c3;
  companion(0, 1) = -cp.c2;
  companion(0, 2) = cp.c1;
  companion(0, 3) = -cp.c0;
  companion(1, 0) = 1.0;
  companion(2, 1) = 1.0;
  companion(3, 2) = 1.0;
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(companion, false);
  std::vector<RootRep> reps;
  for (int k = 0; k < 4; ++k) {
    const auto z = solver.eigenvalues()(k);
    reps.push_back({std::abs(z), std::atan2(std::abs(z.imag()), z.real())});
  }
  return reps;
}

double clamp_cos(double c) { return std::acos(std::clamp(c, -1.0, 1.0)); }
double nonneg_sqrt(double v) { return std::sqrt(std::max(v, 0.0)); }
// r >= 1 from r + 1/r = s or r - 1/r = d.
double from_sum(double s) { return 0.5 * (s + nonneg_sqrt(s * s - 4.0)); }
double from_difference(double d) { return 0.5 * (d + std::sqrt(d * d + 4.0)); }

// Repeated roots are only accurate to a root of the rounding error, so every
// case but the generic one reads its parameters off the coefficients.
void realize_parameters(AlgebraicClass& out, const CharPoly& cp) {
  const double c1 = cp.c1, c2 = cp.c2, c3 = cp.c3;
  out.r = 1.0;
  switch (out.case_id) {
    case 1: {
      std::vector<RootRep> reps = root_reps(cp);
      std::sort(reps.begin(), reps.end(), [](const RootRep& a, const RootRep& b) { return a.modulus > b.modulus; });
      out.r = std::sqrt((reps[0].modulus + reps[1].modulus) / (reps[2].modulus + reps[3].modulus));
      out.theta = 0.5 * (reps[0].angle + reps[1].angle);
      out.phi = 0.5 * (reps[2].angle + reps[3].angle);
      return;
    }
    case 2: {
      // (r - 1/r)^2 - 4 cos^2 = c2 - 2 and (r - 1/r)^2 * 4 cos^2 = c3^2
      const double x = 0.5 * ((c2 - 2.0) + std::sqrt((c2 - 2.0) * (c2 - 2.0) + 4.0 * c3 * c3));
      const double d = nonneg_sqrt(x);
      out.r = from_difference(d);
      out.theta = d > 0.0 ? clamp_cos(0.5 * (c3 - c1) / (2.0 * d)) : pi / 2;
      out.phi = pi - out.theta;
      return;
    }
    case 3:
      out.r = std::sqrt(from_sum(c2));
      out.theta = pi / 2;
      out.phi = pi / 2;
      return;
    case 4: {
      // (r + 1/r)^2 + 4 cos^2 = c2 + 2 and their product is c3^2
      const double sum = c2 + 2.0;
      const double x = 0.5 * (sum + nonneg_sqrt(sum * sum - 4.0 * c3 * c3));
      out.r = from_sum(nonneg_sqrt(x));
      const double half_c = 0.5 * (c1 + c3);
      out.theta = clamp_cos(std::copysign(0.5 * nonneg_sqrt(sum - x), half_c));
      out.phi = out.theta;
      return;
    }
    case 5: {
      // cos(theta), cos(phi) solve t^2 - (c3/2) t + (c2 - 2)/4 = 0
      const double half = 0.25 * (c1 + c3);
      const double root = nonneg_sqrt(half * half - (c2 - 2.0));
      out.theta = clamp_cos(0.5 * (half + root));
      out.phi = clamp_cos(0.5 * (half - root));
      return;
    }
    case 6:
    case 8:
      out.theta = clamp_cos((c1 + c3) / 8.0);
      if (out.case_id == 6) {
        out.phi = out.theta;
      } else {
        out.phi.reset();
      }
      return;
    case 7:
      out.theta = clamp_cos(nonneg_sqrt((2.0 - c2) / 4.0));
      out.phi = pi - out.theta;
      return;
    default:
      return;
  }
}

[[noreturn]] void inconsistent(const std::string& why) { throw Error(ErrorCode::InconsistentInvariants, why); }

}  // namespace

std::string_view to_string(DynamicalType t) noexcept {
  switch (t) {
    case DynamicalType::Elliptic: return "elliptic";
    case DynamicalType::Parabolic: return "parabolic";
    case DynamicalType::Hyperbolic: return "hyperbolic";
  }
  return "unknown";
}

std::ostream& operator<<(std::ostream& os, DynamicalType t) { return os << to_string(t); }

DynamicalType dynamical_type(const QMatrix2& m, double tol) {
  const double det = det_H(m, tol);
  if (std::abs(det - 1.0) > tol) throw Error(ErrorCode::NotUnitDeterminant, "det_H(A) = " + std::to_string(det));
  const EigenSpectrum spectrum = eigenvalue_classes(m, tol);
  for (const EigenClass& c : spectrum.classes) {
    if (std::abs(c.rep.modulus - 1.0) > tol) return DynamicalType::Hyperbolic;
  }
  return is_diagonalizable(m, tol) ? DynamicalType::Elliptic : DynamicalType::Parabolic;
}

CharPoly coeff_identities(double r, double theta, double phi) {
  if (!(r > 0.0)) throw Error(ErrorCode::DomainError, "r must be positive");
  if (!(theta >= 0.0 && theta <= pi) || !(phi >= 0.0 && phi <= pi)) {
    throw Error(ErrorCode::DomainError, "angles must lie in [0, pi]");
  }
  const double ct = std::cos(theta);
  const double cp = std::cos(phi);
  const double inv = 1.0 / r;
  return {2.0 * (r * ct + inv * cp), 4.0 * ct * cp + r * r + inv * inv, 2.0 * (inv * ct + r * cp), 1.0};
}

std::string_view case_template(int case_id) {
  switch (case_id) {
    case 1: return "diag(r e^{i theta}, r^-1 e^{i phi}), r != 1, theta != phi, theta != pi - phi";
    case 2: return "diag(r e^{i theta}, r^-1 e^{i (pi - theta)}), r != 1, theta != pi/2";
    case 3: return "diag(r i, r^-1 i), r != 1";
    case 4: return "diag(r e^{i theta}, r^-1 e^{i theta}), r != 1, theta != pi/2";
    case 5: return "diag(e^{i theta}, e^{i phi}), theta != phi, theta != pi - phi";
    case 6: return "diag(e^{i theta}, e^{i theta}), theta != pi/2";
    case 7: return "diag(e^{i theta}, e^{i (pi - theta)})";
    case 8: return "(e^{i theta} 1; 0 e^{i theta})";
    default: return "";
  }
}

AlgebraicClass algebraic_class(const CharPoly& cp, bool diagonalizable, double tol) {
  if (std::abs(cp.c0 - 1.0) > tol) throw Error(ErrorCode::DomainError, "c0 must be 1; normalize to SL(2,H) first");
  const double c1 = cp.c1;
  const double c2 = cp.c2;
  const double c3 = cp.c3;
  AlgebraicClass out;
  auto watch = [&](double margin) {
    if (std::abs(margin) <= 10.0 * tol) out.flags.near_case_boundary = true;
  };
  auto require_semisimple = [&]() {
    if (!diagonalizable) inconsistent("coefficients describe a diagonalizable family but A is not diagonalizable");
  };

  const double diff_sq = c1 * c1 - c3 * c3;
  watch(diff_sq);
  if (std::abs(diff_sq) > tol) {
    require_semisimple();
    out.case_id = 1;
  } else if (std::abs(c1) <= tol && std::abs(c3) <= tol) {
    const double d = c2 - 2.0;
    watch(d);
    watch(c2 + 2.0);
    if (d > tol) {
      require_semisimple();
      out.case_id = 3;
    } else if (c2 >= -2.0 - tol) {
      if (std::abs(d) <= tol && !diagonalizable) {
        out.case_id = 8;
        out.flags.angle_half_pi = true;
      } else {
        require_semisimple();
        out.case_id = 7;
        out.flags.angle_real = std::abs(c2 + 2.0) <= tol;
        out.flags.angle_half_pi = std::abs(d) <= tol;
      }
    } else {
      inconsistent("c1 = c3 = 0 with c2 < -2");
    }
  } else if (std::abs(c1 - c3) <= std::abs(c1 + c3)) {
    const double d = c2 - (c1 * c1 / 4.0 + 2.0);
    watch(d);
    if (d > tol) {
      require_semisimple();
      out.case_id = 4;
    } else if (d < -tol) {
      require_semisimple();
      out.case_id = 5;
    } else {
      watch(std::abs(c1) - 4.0);
      out.flags.c1_at_four = std::abs(std::abs(c1) - 4.0) <= tol;
      if (std::abs(c1) > 4.0 + tol) {
        require_semisimple();
        out.case_id = 4;
        out.flags.angle_real = true;
      } else {
        out.case_id = diagonalizable ? 6 : 8;
        out.flags.angle_zero = std::abs(c1 - 4.0) <= tol;
        out.flags.angle_pi = std::abs(c1 + 4.0) <= tol;
        out.flags.angle_real = out.flags.angle_zero || out.flags.angle_pi;
      }
    }
  } else {
    require_semisimple();
    const double e = c2 - (c1 * c1 / 4.0 - 2.0);
    watch(e);
    if (e < -tol) inconsistent("c1 = -c3 != 0 with c2 < c1^2/4 - 2");
    out.case_id = 2;
    out.flags.angle_real = std::abs(e) <= tol;
  }

  out.representative = std::string(case_template(out.case_id));
  realize_parameters(out, cp);
  return out;
}

std::vector<int> matching_cases(const CharPoly& cp, bool diagonalizable, double tol) {
  const double c1 = cp.c1, c2 = cp.c2, c3 = cp.c3;
  const bool equal = std::abs(c1 - c3) <= tol;
  const bool opposite = std::abs(c1 + c3) <= tol;
  const bool zero = std::abs(c1) <= tol && std::abs(c3) <= tol;
  const double plus = c2 - (c1 * c1 / 4.0 + 2.0);
  const double minus = c2 - (c1 * c1 / 4.0 - 2.0);
  const bool small_c1 = std::abs(c1) <= 4.0 + tol;

  std::vector<int> out;
  if (std::abs(c1 * c1 - c3 * c3) > tol) out.push_back(1);
  if (opposite && !zero && minus >= -tol) out.push_back(2);
  if (zero && c2 - 2.0 > tol) out.push_back(3);
  if (equal && !zero && (plus > tol || (std::abs(plus) <= tol && !small_c1))) out.push_back(4);
  if (equal && !zero && plus < -tol) out.push_back(5);
  if (equal && !zero && std::abs(plus) <= tol && small_c1 && diagonalizable) out.push_back(6);
  if (zero && c2 >= -2.0 - tol && c2 <= 2.0 + tol && diagonalizable) out.push_back(7);
  if (equal && std::abs(plus) <= tol && small_c1 && !diagonalizable) out.push_back(8);
  return out;
}

int family_case(const NormalForm& form, double tol) {
  if (is_parabolic(form)) return 8;
  const auto& d = std::get<DiagonalForm>(form);
  const bool unit = std::abs(d.r - 1.0) <= tol;
  const bool equal = std::abs(d.theta - d.phi) <= tol;
  const bool supplementary = std::abs(d.theta + d.phi - pi) <= tol;
  const bool half = std::abs(d.theta - pi / 2) <= tol;
  if (!unit) {
    if (equal) return half ? 3 : 4;
    return supplementary ? 2 : 1;
  }
  if (equal) return half ? 7 : 6;
  return supplementary ? 7 : 5;
}

}  // namespace quatmob
