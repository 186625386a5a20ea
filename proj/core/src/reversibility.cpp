#include "quatmob/reversibility.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <ostream>
#include <sstream>

#include "quatmob/error.hpp"

namespace quatmob {

namespace {

using std::numbers::pi;
using cplx = std::complex<double>;

bool interior(double angle, double tol) { return angle > tol && angle < pi - tol; }
bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

bool is_complex(const Quaternion& q, double tol) { return std::hypot(q.y, q.z) <= tol; }
bool is_zero(const Quaternion& q, double tol) { return q.norm() <= tol; }

bool is_center(const DiagonalForm& d, double tol) {
  return near(d.r, 1.0, tol) && near(d.theta, d.phi, tol) && !interior(d.theta, tol);
}

const QMatrix2 kSwapJ = QMatrix2::antidiag(Quaternion::j(), Quaternion::j());
const QMatrix2 kDiagJ = QMatrix2::diag(Quaternion::j(), Quaternion::j());
const QMatrix2 kInvolutionJ = QMatrix2::antidiag(Quaternion::j(), -Quaternion::j());
const QMatrix2 kRotation = QMatrix2::antidiag(Quaternion(1), Quaternion(-1));
const QMatrix2 kReflection = QMatrix2::diag(Quaternion(1), Quaternion(-1));
const QMatrix2 kHalfTurn = QMatrix2::diag(Quaternion::i(), -Quaternion::i());

QMatrix2 parabolic_reverser(double theta) {
  const Quaternion lead = Quaternion::from_complex(-std::polar(1.0, -2.0 * theta)) * Quaternion::j();
  return QMatrix2::diag(lead, Quaternion::j());
}

// Every fixed table entry has det_H = 1, so conjugation by the witness never
// needs renormalising. Checked once on first use.
void self_check_tables() {
  static const bool ok = [] {
    for (const QMatrix2& g : {kSwapJ, kDiagJ, kInvolutionJ, kRotation, kReflection, kHalfTurn, parabolic_reverser(0.7)}) {
      if (std::abs(det_H(g) - 1.0) > 1e-12) return false;
    }
    return true;
  }();
  if (!ok) throw Error(ErrorCode::InternalInconsistency, "reverser table entry without unit determinant");
}

double conj_scale(const QMatrix2& m, const QMatrix2& g, const QMatrix2& g_inv) {
  return std::max(1.0, norm_inf(m)) * std::max(1.0, norm_inf(g) * norm_inf(g_inv));
}

QMatrix2 conjugate(const QMatrix2& s, const QMatrix2& g0) { return s * g0 * m_inverse(s, 0.0); }

// Entry pattern of the centralizer of a canonical representative.
bool in_centralizer_table(const NormalForm& form, const QMatrix2& g, double tol) {
  const double scale = tol * std::max(1.0, norm_inf(g));
  if (const auto* p = std::get_if<ParabolicForm>(&form)) {
    if (!is_zero(g.c, scale) || !is_zero(g.a - g.d, scale)) return false;
    if (interior(p->theta, tol)) return is_complex(g.a, scale) && is_complex(g.b, scale);
    return true;
  }
  const auto& d = std::get<DiagonalForm>(form);
  if (near(d.r, 1.0, tol) && near(d.theta, d.phi, tol)) {
    if (!interior(d.theta, tol)) return true;
    return is_complex(g.a, scale) && is_complex(g.b, scale) && is_complex(g.c, scale) && is_complex(g.d, scale);
  }
  if (!is_zero(g.b, scale) || !is_zero(g.c, scale)) return false;
  if (interior(d.theta, tol) && !is_complex(g.a, scale)) return false;
  if (interior(d.phi, tol) && !is_complex(g.d, scale)) return false;
  return true;
}

Quaternion random_quaternion(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  return {n(rng), n(rng), n(rng), n(rng)};
}

Quaternion random_complex(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  return {n(rng), n(rng), 0.0, 0.0};
}

Quaternion random_entry(std::mt19937_64& rng, bool complex_only) {
  return complex_only ? random_complex(rng) : random_quaternion(rng);
}

// Rejects nearly singular draws so the det_H normalisation stays tame.
template <typename Draw>
QMatrix2 draw_unimodular(Draw&& draw) {
  for (;;) {
    const QMatrix2 g = draw();
    const double det = det_H(g);
    if (det > 1e-3 * std::pow(std::max(1.0, norm_inf(g)), 4)) return (1.0 / std::pow(det, 0.25)) * g;
  }
}

Factorization involution_pair(const QMatrix2& m, const QMatrix2& g) {
  return {g, g * m, 1, 1, FactorMode::SlInvolutions};
}

Factorization skew_pair(const QMatrix2& m, const QMatrix2& g) {
  return {-g, g * m, -1, -1, FactorMode::SlSkew};
}

Factorization mixed_pair(const QMatrix2& m, const QMatrix2& g) {
  return {-(m_inverse(g, 0.0) * m_inverse(m, 0.0)), g, 1, -1, FactorMode::Mixed};
}

}  // namespace

std::string_view to_string(ReverserSign s) noexcept { return s == ReverserSign::Plus ? "+" : "-"; }

std::string_view to_string(FactorMode m) noexcept {
  switch (m) {
    case FactorMode::SlInvolutions: return "sl-involutions";
    case FactorMode::SlSkew: return "sl-skew";
    case FactorMode::Mixed: return "mixed";
    case FactorMode::Psl: return "psl";
  }
  return "unknown";
}

std::string_view to_string(MembershipVerdict v) noexcept {
  switch (v) {
    case MembershipVerdict::Centralizer: return "centralizer";
    case MembershipVerdict::Reverser: return "reverser";
    case MembershipVerdict::NegReverser: return "neg-reverser";
    case MembershipVerdict::None: return "none";
  }
  return "unknown";
}

std::string_view to_string(InvolutionKind k) noexcept {
  switch (k) {
    case InvolutionKind::PlusInvolution: return "involution";
    case InvolutionKind::SkewInvolution: return "skew-involution";
    case InvolutionKind::CentralPlus: return "central+";
    case InvolutionKind::CentralMinus: return "central-";
    case InvolutionKind::NotInvolution: return "not-involution";
  }
  return "unknown";
}

std::ostream& operator<<(std::ostream& os, MembershipVerdict v) { return os << to_string(v); }

double FactorizationResiduals::max() const { return std::max({b_square, c_square, product}); }

FactorizationResiduals residuals(const QMatrix2& m, const Factorization& f) {
  const QMatrix2 id = QMatrix2::identity();
  return {distance_inf(f.b * f.b, static_cast<double>(f.sign_b) * id),
          distance_inf(f.c * f.c, static_cast<double>(f.sign_c) * id), distance_inf(f.b * f.c, m)};
}

double reverser_residual(const QMatrix2& m, const QMatrix2& g, ReverserSign sign, double tol) {
  const QMatrix2 target = sign == ReverserSign::Plus ? m_inverse(m, tol) : -m_inverse(m, tol);
  return distance_inf(g * m * m_inverse(g, tol), target);
}

bool reversible_sl(const NormalForm& form, double tol) {
  if (is_parabolic(form)) return true;
  const auto& d = std::get<DiagonalForm>(form);
  return near(d.r, 1.0, tol) || near(d.theta, d.phi, tol);
}

bool strongly_reversible_sl(const NormalForm& form, double tol) {
  if (const auto* p = std::get_if<ParabolicForm>(&form)) return !interior(p->theta, tol);
  const auto& d = std::get<DiagonalForm>(form);
  const bool unit = near(d.r, 1.0, tol);
  const bool equal = near(d.theta, d.phi, tol);
  if (!unit) return equal;
  if (equal) return true;  // interior: the j-swap; boundary: +-I
  return !interior(d.theta, tol) && !interior(d.phi, tol);
}

bool conj_neg_inverse(const NormalForm& form, double tol) {
  if (const auto* p = std::get_if<ParabolicForm>(&form)) return near(p->theta, pi / 2, tol);
  const auto& d = std::get<DiagonalForm>(form);
  return near(d.theta + d.phi, pi, tol);
}

bool is_reversible_sl(const QMatrix2& m, double tol) { return reversible_sl(normal_form(m, tol).form, tol); }
bool is_strongly_reversible_sl(const QMatrix2& m, double tol) { return strongly_reversible_sl(normal_form(m, tol).form, tol); }
bool is_conj_neg_inverse(const QMatrix2& m, double tol) { return conj_neg_inverse(normal_form(m, tol).form, tol); }

QMatrix2 table_reverser(const NormalForm& form, ReverserSign sign, double tol) {
  self_check_tables();
  if (sign == ReverserSign::Minus) {
    if (!conj_neg_inverse(form, tol)) throw Error(ErrorCode::NotReversible, "not conjugate to -A^-1");
    return is_parabolic(form) ? kHalfTurn : kRotation;
  }
  if (!reversible_sl(form, tol)) throw Error(ErrorCode::NotReversible, "not conjugate to A^-1");
  if (const auto* p = std::get_if<ParabolicForm>(&form)) return parabolic_reverser(p->theta);
  const auto& d = std::get<DiagonalForm>(form);
  if (is_center(d, tol)) return QMatrix2::identity();
  return near(d.r, 1.0, tol) ? kDiagJ : kSwapJ;
}

QMatrix2 table_involutive_reverser(const NormalForm& form, double tol) {
  self_check_tables();
  if (!strongly_reversible_sl(form, tol)) throw Error(ErrorCode::NotDecomposable, "not strongly reversible in SL(2,H)");
  if (is_parabolic(form)) return kReflection;
  const auto& d = std::get<DiagonalForm>(form);
  if (near(d.r, 1.0, tol) && !interior(d.theta, tol) && !interior(d.phi, tol)) return QMatrix2::identity();
  return kInvolutionJ;
}

QMatrix2 table_skew_reverser(const NormalForm& form, double tol) {
  if (!reversible_sl(form, tol)) throw Error(ErrorCode::NotDecomposable, "not reversible in SL(2,H)");
  if (const auto* d = std::get_if<DiagonalForm>(&form); d && is_center(*d, tol)) return kDiagJ;
  return table_reverser(form, ReverserSign::Plus, tol);
}

QMatrix2 construct_reverser(const QMatrix2& m, ReverserSign sign, double tol) {
  const NormalFormResult nf = normal_form(m, tol);
  const QMatrix2 g = conjugate(nf.witness.s, table_reverser(nf.form, sign, tol));
  const QMatrix2 g_inv = m_inverse(g, 0.0);
  const QMatrix2 target = sign == ReverserSign::Plus ? m_inverse(m, 0.0) : -m_inverse(m, 0.0);
  if (distance_inf(g * m * g_inv, target) > 1e-6 * conj_scale(m, g, g_inv)) {
    throw Error(ErrorCode::NumericalBreakdown, "constructed reverser fails its defining identity");
  }
  return g;
}

Factorization decompose_involutions(const QMatrix2& m, FactorMode mode, double tol) {
  const NormalFormResult nf = normal_form(m, tol);
  const QMatrix2& s = nf.witness.s;
  switch (mode) {
    case FactorMode::SlInvolutions:
      return involution_pair(m, conjugate(s, table_involutive_reverser(nf.form, tol)));
    case FactorMode::SlSkew:
      return skew_pair(m, conjugate(s, table_skew_reverser(nf.form, tol)));
    case FactorMode::Mixed:
      if (!conj_neg_inverse(nf.form, tol)) throw Error(ErrorCode::NotDecomposable, "not conjugate to -A^-1");
      return mixed_pair(m, conjugate(s, table_reverser(nf.form, ReverserSign::Minus, tol)));
    case FactorMode::Psl:
      if (conj_neg_inverse(nf.form, tol)) return decompose_involutions(m, FactorMode::Mixed, tol);
      if (strongly_reversible_sl(nf.form, tol)) return decompose_involutions(m, FactorMode::SlInvolutions, tol);
      if (reversible_sl(nf.form, tol)) return decompose_involutions(m, FactorMode::SlSkew, tol);
      throw Error(ErrorCode::NotDecomposable, "not reversible in PSL(2,H)");
  }
  throw Error(ErrorCode::NotDecomposable, "unknown mode");
}

ReversibilityReport psl_report(const QMatrix2& m, double tol) {
  const NormalFormResult nf = normal_form(m, tol);
  ReversibilityReport rep;
  rep.reversible_sl = reversible_sl(nf.form, tol);
  rep.strongly_reversible_sl = strongly_reversible_sl(nf.form, tol);
  rep.conj_neg_inverse = conj_neg_inverse(nf.form, tol);
  rep.reversible_psl = rep.reversible_sl || rep.conj_neg_inverse;

  const CharPoly cp = char_poly(m, tol);
  rep.c1_sq_minus_c3_sq = cp.c1 * cp.c1 - cp.c3 * cp.c3;
  rep.c1_sq_eq_c3_sq = std::abs(rep.c1_sq_minus_c3_sq) < tol;
  if (rep.c1_sq_eq_c3_sq != rep.reversible_psl) {
    std::ostringstream why;
    why << "normal form says reversible_psl=" << rep.reversible_psl << " but c1^2 - c3^2 = " << rep.c1_sq_minus_c3_sq;
    throw Error(ErrorCode::InternalInconsistency, why.str());
  }
  if (rep.strongly_reversible_sl && !rep.reversible_sl) {
    throw Error(ErrorCode::InternalInconsistency, "strongly reversible but not reversible");
  }

  if (!rep.reversible_psl) {
    std::ostringstream why;
    why << "c1^2 != c3^2 (c1^2 - c3^2 = " << rep.c1_sq_minus_c3_sq << ")";
    rep.note = why.str();
    return rep;
  }

  rep.reverser_sign = rep.reversible_sl ? ReverserSign::Plus : ReverserSign::Minus;
  rep.reverser = construct_reverser(m, *rep.reverser_sign, tol);
  rep.reverser_residual = reverser_residual(m, *rep.reverser, *rep.reverser_sign, tol);

  rep.factorization = decompose_involutions(m, FactorMode::Psl, tol);
  rep.factorization_residuals = residuals(m, *rep.factorization);
  const double verify_tol = 1e-8 * std::pow(std::max(1.0, norm_inf(m)), 2);
  rep.strongly_reversible_psl = rep.factorization_residuals.max() < verify_tol;
  if (!rep.strongly_reversible_psl) rep.note = "factorization residual above verification threshold";
  return rep;
}

MembershipVerdict extended_centralizer_membership(const QMatrix2& m, const QMatrix2& g, double tol) {
  if (std::abs(det_H(g, tol) - 1.0) > tol) throw Error(ErrorCode::NotUnitDeterminant, "det_H(g) != 1");
  const QMatrix2 g_inv = m_inverse(g, tol);
  const QMatrix2 conj = g * m * g_inv;
  const QMatrix2 inv = m_inverse(m, tol);
  const double bound = tol * conj_scale(m, g, g_inv);
  if (distance_inf(conj, m) < bound) return MembershipVerdict::Centralizer;
  if (distance_inf(conj, inv) < bound) return MembershipVerdict::Reverser;
  if (distance_inf(conj, -inv) < bound) return MembershipVerdict::NegReverser;
  return MembershipVerdict::None;
}

MembershipVerdict structural_membership(const NormalForm& form, const QMatrix2& g, double tol) {
  if (in_centralizer_table(form, g, tol)) return MembershipVerdict::Centralizer;
  // R = Z g_+ and S = Z g_- for any fixed g_+- in those sets.
  if (reversible_sl(form, tol) &&
      in_centralizer_table(form, g * m_inverse(table_reverser(form, ReverserSign::Plus, tol), 0.0), tol)) {
    return MembershipVerdict::Reverser;
  }
  if (conj_neg_inverse(form, tol) &&
      in_centralizer_table(form, g * m_inverse(table_reverser(form, ReverserSign::Minus, tol), 0.0), tol)) {
    return MembershipVerdict::NegReverser;
  }
  return MembershipVerdict::None;
}

QMatrix2 sample_centralizer(const NormalForm& form, std::mt19937_64& rng, double tol) {
  if (const auto* p = std::get_if<ParabolicForm>(&form)) {
    const bool cx = interior(p->theta, tol);
    return draw_unimodular([&] {
      const Quaternion a = random_entry(rng, cx);
      return QMatrix2{a, random_entry(rng, cx), Quaternion(), a};
    });
  }
  const auto& d = std::get<DiagonalForm>(form);
  if (near(d.r, 1.0, tol) && near(d.theta, d.phi, tol)) {
    const bool cx = interior(d.theta, tol);
    return draw_unimodular([&] {
      return QMatrix2{random_entry(rng, cx), random_entry(rng, cx), random_entry(rng, cx), random_entry(rng, cx)};
    });
  }
  const bool cx_a = interior(d.theta, tol);
  const bool cx_d = interior(d.phi, tol);
  return draw_unimodular([&] { return QMatrix2::diag(random_entry(rng, cx_a), random_entry(rng, cx_d)); });
}

QMatrix2 sample_reverser(const NormalForm& form, std::mt19937_64& rng, double tol) {
  if (!reversible_sl(form, tol)) throw Error(ErrorCode::NotReversible, "not conjugate to A^-1");
  const Quaternion j = Quaternion::j();
  if (const auto* p = std::get_if<ParabolicForm>(&form)) {
    const bool cx = interior(p->theta, tol);
    const Quaternion twist = Quaternion::from_complex(std::polar(1.0, -2.0 * p->theta));
    return draw_unimodular([&] {
      const Quaternion a = random_entry(rng, cx);
      return QMatrix2{-(twist * a) * j, random_entry(rng, cx) * j, Quaternion(), a * j};
    });
  }
  const auto& d = std::get<DiagonalForm>(form);
  if (is_center(d, tol)) {
    return draw_unimodular([&] {
      return QMatrix2{random_quaternion(rng), random_quaternion(rng), random_quaternion(rng), random_quaternion(rng)};
    });
  }
  if (near(d.r, 1.0, tol) && near(d.theta, d.phi, tol)) {
    return draw_unimodular([&] {
      return QMatrix2{random_complex(rng) * j, random_complex(rng) * j, random_complex(rng) * j, random_complex(rng) * j};
    });
  }
  if (near(d.r, 1.0, tol)) {
    const bool cx_a = interior(d.theta, tol);
    const bool cx_d = interior(d.phi, tol);
    return draw_unimodular([&] { return QMatrix2::diag(random_entry(rng, cx_a) * j, random_entry(rng, cx_d) * j); });
  }
  const bool cx = interior(d.theta, tol);
  return draw_unimodular([&] { return QMatrix2::antidiag(random_entry(rng, cx) * j, random_entry(rng, cx) * j); });
}

InvolutionClass classify_involution(const QMatrix2& m, double tol) {
  if (std::abs(det_H(m, tol) - 1.0) > tol) throw Error(ErrorCode::NotUnitDeterminant, "det_H(A) != 1");
  const QMatrix2 id = QMatrix2::identity();
  const double bound = tol * std::max(1.0, norm_inf(m) * norm_inf(m));
  const QMatrix2 sq = m * m;

  const auto witness = [&](const QMatrix2& target) -> std::optional<QMatrix2> {
    const NormalFormResult a = normal_form(m, tol);
    const NormalFormResult k = normal_form(target, tol);
    return a.witness.s * m_inverse(k.witness.s, 0.0);
  };

  if (distance_inf(sq, id) < bound) {
    if (distance_inf(m, id) < bound) return {InvolutionKind::CentralPlus, id};
    if (distance_inf(m, -id) < bound) return {InvolutionKind::CentralMinus, id};
    return {InvolutionKind::PlusInvolution, witness(kReflection)};
  }
  if (distance_inf(sq, -id) < bound) return {InvolutionKind::SkewInvolution, witness(kRotation)};
  return {InvolutionKind::NotInvolution, std::nullopt};
}

}  // namespace quatmob
