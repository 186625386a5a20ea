#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <thread>

#include <Eigen/Eigenvalues>

#include "cli.hpp"
#include "quatmob/classify.hpp"
#include "quatmob/json_io.hpp"
#include "quatmob/moebius.hpp"
#include "quatmob/reversibility.hpp"
#include "quatmob/sampling.hpp"

namespace quatmob::cli {

namespace {

using std::numbers::pi;
using cplx = std::complex<double>;

constexpr double kDecide = kClassifyTol;
constexpr double kResidual = 1e-8;
constexpr double kEmbedding = 1e-9;
constexpr double kCoefficient = 1e-10;
constexpr std::size_t kMaxCounterexamples = 5;

const std::vector<std::string> kMixedFamilies = {
    "case-1", "case-2", "case-3",         "case-4",    "case-5",          "case-6",           "case-7",
    "case-8", "parabolic-real", "parabolic-half", "central", "involution", "skew-involution", "elliptic-distinct", "neg-inverse"};

struct Outcome {
  bool pass = true;
  double residual = 0.0;
  std::optional<double> observed;  // check-specific statistic
  json detail;
};

using SampleFn = std::function<Outcome(std::mt19937_64&, std::size_t)>;

struct Check {
  std::string name;
  std::string observed_label;
  SampleFn fn;
  bool sum_observed = false;  // total over samples instead of the minimum
};

Outcome fail(json detail, double residual = 0.0) { return {false, residual, std::nullopt, std::move(detail)}; }

void require(Outcome& o, bool ok, const char* what) {
  if (!ok && o.pass) {
    o.pass = false;
    o.detail["failed"] = what;
  }
}

template <typename Fn>
bool throws_code(Fn&& fn, ErrorCode code) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

// Inputs drawn for the current sample, so a check that throws still reports its matrices.
thread_local json t_inputs = json::array();

GeneratedSample tracked(GeneratedSample s) {
  t_inputs.push_back({{"family", s.family}, {"matrix", s.matrix}});
  return s;
}

GeneratedSample mixed_sample(std::mt19937_64& rng, std::size_t k, double cond) {
  return tracked(sample_family(kMixedFamilies[k % kMixedFamilies.size()], rng, cond));
}

QMatrix2 random_matrix(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  auto q = [&] { return Quaternion{n(rng), n(rng), n(rng), n(rng)}; };
  const QMatrix2 m{q(), q(), q(), q()};
  t_inputs.push_back({{"matrix", m}});
  return m;
}

double coefficient_scale(const QMatrix2& m) { return std::pow(std::max(1.0, norm_inf(m)), 4); }

bool forms_close(const NormalForm& a, const NormalForm& b, double tol) {
  if (a.index() != b.index()) return false;
  if (const auto* p = std::get_if<ParabolicForm>(&a)) return std::abs(p->theta - std::get<ParabolicForm>(b).theta) <= tol;
  const auto& x = std::get<DiagonalForm>(a);
  const auto& y = std::get<DiagonalForm>(b);
  return std::abs(x.r - y.r) <= tol && std::abs(x.theta - y.theta) <= tol && std::abs(x.phi - y.phi) <= tol;
}

// Distinct eigenlines: every returned fixed point is intrinsic to A.
bool unique_eigenlines(const NormalForm& f, double tol) {
  if (is_parabolic(f)) return true;
  const auto& d = std::get<DiagonalForm>(f);
  return !(std::abs(d.r - 1.0) <= tol && std::abs(d.theta - d.phi) <= tol);
}

// ---- checks ---------------------------------------------------------------

Outcome theorem_equivalence(std::mt19937_64& rng, std::size_t k, double cond) {
  const GeneratedSample s = mixed_sample(rng, k, cond);
  const ReversibilityReport rep = psl_report(s.matrix, kDecide);
  const CharPoly cp = char_poly(s.matrix, kDecide);
  const bool coefficient_route = std::abs(cp.c1 * cp.c1 - cp.c3 * cp.c3) < kResidual;
  const bool truth = reversible_sl(s.form) || conj_neg_inverse(s.form);
  Outcome o{true, rep.factorization_residuals.max(), std::nullopt, {}};
  require(o, rep.reversible_psl == truth, "normal-form route disagrees with the generated family");
  require(o, coefficient_route == truth, "c1^2 = c3^2 disagrees with the generated family");
  require(o, rep.strongly_reversible_psl == truth, "two-involution factorization disagrees");
  if (!o.pass) o.detail.update({{"family", s.family}, {"matrix", s.matrix}, {"report", rep}});
  return o;
}

Outcome coefficient_identities(std::mt19937_64& rng, std::size_t) {
  const double r = std::exp(std::uniform_real_distribution<double>(std::log(0.1), std::log(10.0))(rng));
  const double t = std::uniform_real_distribution<double>(0.0, pi)(rng);
  const double p = std::uniform_real_distribution<double>(0.0, pi)(rng);
  const QMatrix2 m = QMatrix2::diag(Quaternion::polar_i(r, t), Quaternion::polar_i(1.0 / r, p));
  t_inputs.push_back({{"r", r}, {"theta", t}, {"phi", p}, {"matrix", m}});
  const double err = char_poly(m, kDecide).max_abs_diff(coeff_identities(r, t, p));
  if (err >= kCoefficient) return fail({{"r", r}, {"theta", t}, {"phi", p}, {"error", err}}, err);
  return {true, err, std::nullopt, {}};
}

// Structured parameter draw: each configuration puts (r, t, p) on one of the
// sets named by the lemma, or on one of the surfaces where the stated
// biconditionals break, or at a generic point.
struct LemmaPoint {
  double r, t, p;
};

LemmaPoint lemma_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto angle = [&] { return 0.1 + (pi - 0.2) * u(rng); };
  const auto modulus = [&] { return u(rng) < 0.5 ? 1.2 + 2.8 * u(rng) : 1.0 / (1.2 + 2.8 * u(rng)); };
  const int kind = static_cast<int>(u(rng) * 10.0);
  for (;;) {
    double r = modulus(), t = angle(), p = angle();
    switch (kind) {
      case 0: r = 1.0; break;
      case 1: p = t; break;
      case 2: p = pi - t; break;
      case 3: t = p = pi / 2; break;
      case 4: t = u(rng) < 0.5 ? 0.0 : pi; p = u(rng) < 0.5 ? 0.0 : pi; break;
      case 5: {  // r^2 sin^2 p = sin^2 t
        const double s = r * std::sin(p);
        if (s > 1.0) continue;
        t = u(rng) < 0.5 ? std::asin(s) : pi - std::asin(s);
        break;
      }
      case 6: {  // r^2 (cos t + cos p) = 2 cos t
        const double c = 2.0 * std::cos(t) / (r * r) - std::cos(t);
        if (std::abs(c) > 1.0) continue;
        p = std::acos(c);
        break;
      }
      case 7: {  // (r^2 + 2) cos t = r^2 cos p
        const double c = (r * r + 2.0) * std::cos(t) / (r * r);
        if (std::abs(c) > 1.0) continue;
        p = std::acos(c);
        break;
      }
      case 8: {  // c1 = 0 with c3 != 0
        const double c = -std::cos(p) * r * r;
        if (std::abs(c) > 1.0) continue;
        t = std::acos(c);
        break;
      }
      default: break;
    }
    return {r, t, p};
  }
}

Outcome coefficient_biconditionals(std::mt19937_64& rng, std::size_t) {
  const LemmaPoint x = lemma_point(rng);
  const QMatrix2 m = QMatrix2::diag(Quaternion::polar_i(x.r, x.t), Quaternion::polar_i(1.0 / x.r, x.p));
  t_inputs.push_back({{"r", x.r}, {"theta", x.t}, {"phi", x.p}, {"matrix", m}});
  const CharPoly cp = char_poly(m, kDecide);
  const double tol = kDecide * std::max(1.0, x.r * x.r) * std::max(1.0, 1.0 / (x.r * x.r));
  const double ct = std::cos(x.t), cpp = std::cos(x.p);
  const double st = std::sin(x.t), sp = std::sin(x.p);
  const double d_plus = cp.c2 - (cp.c1 * cp.c1 / 4.0 + 2.0);
  const double d_minus = cp.c2 - (cp.c1 * cp.c1 / 4.0 - 2.0);
  const double rr = x.r * x.r;
  const double ri = x.r - 1.0 / x.r;
  const double rs = x.r + 1.0 / x.r;
  const auto zero = [&](double v) { return std::abs(v) <= tol; };
  const bool unit = zero(x.r - 1.0);
  const bool equal = zero(x.t - x.p);
  const bool supp = zero(x.t + x.p - pi);
  const bool half = zero(x.t - pi / 2) && zero(x.p - pi / 2);
  const bool both_real = zero(st) && zero(sp);

  struct Item {
    const char* name;
    double lhs;         // the identity holds iff lhs = 0
    bool paper_rhs;     // condition stated in the lemma
    double corrected;   // distance-like residual of the condition including the dropped branch
  };
  const auto a = [](double v) { return std::abs(v); };
  const Item items[] = {
      {"(4)", cp.c1 - cp.c3, unit || equal, std::min(a(x.r - 1.0), a(x.t - x.p))},
      {"(5)", cp.c1 + cp.c3, supp, a(x.t + x.p - pi)},
      {"(6)", cp.c1, half || (supp && unit), a(ct + rr * cpp)},
      {"(6)-both", std::hypot(cp.c1, cp.c3), half || (supp && unit),
       std::min(std::max(a(x.t - pi / 2), a(x.p - pi / 2)), std::max(a(x.t + x.p - pi), a(x.r - 1.0)))},
      {"(i)", d_plus + (ct - cpp) * (ct - cpp), unit || both_real, std::min(a(x.r - 1.0), a(rr * sp * sp - st * st))},
      {"(ii)", d_plus - ri * ri * (1.0 - ct * ct), equal, std::min(a(x.t - x.p), a(rr * (ct + cpp) - 2.0 * ct))},
      {"(iii)", d_minus - rs * rs * (1.0 - ct * ct), supp, std::min(a(x.t + x.p - pi), a((rr + 2.0) * ct - rr * cpp))},
  };

  // Near a crossing of two branches the identity residual is a product of
  // two small factors (a square where the branches coincide), so a point is
  // judged only when both sides are clearly on or clearly off their zero sets.
  const auto decided = [&](double v) { return v <= tol || v > 1e3 * tol; };
  const auto branch_decided = [&](double v) { return v <= tol || v > 1e2 * std::sqrt(tol); };
  Outcome o{true, 0.0, std::nullopt, {}};
  int excluded = 0;
  for (const Item& it : items) {
    const bool holds = zero(it.lhs);
    if (decided(a(it.lhs)) && branch_decided(it.corrected) && holds != zero(it.corrected)) {
      o.pass = false;
      o.detail["failed"] = std::string("corrected biconditional ") + it.name;
    }
    // Only sufficiency of the stated condition is checked; points where the
    // identity holds without it are counted, not failed (the stated
    // necessity is false on the surfaces behind the corrected column).
    const bool in_margin = a(it.lhs) <= 1e3 * tol;
    if (in_margin && !it.paper_rhs) {
      ++excluded;
      continue;
    }
    if (holds != it.paper_rhs) {
      o.pass = false;
      o.detail["failed"] = std::string("stated biconditional ") + it.name;
    }
  }
  o.observed = static_cast<double>(excluded);
  if (!o.pass) o.detail.update({{"r", x.r}, {"theta", x.t}, {"phi", x.p}, {"char_poly", cp}});
  return o;
}

Outcome reverser_validity(std::mt19937_64& rng, std::size_t k, double cond) {
  const GeneratedSample s = mixed_sample(rng, k, cond);
  Outcome o;
  for (const ReverserSign sign : {ReverserSign::Plus, ReverserSign::Minus}) {
    const bool applicable = sign == ReverserSign::Plus ? reversible_sl(s.form) : conj_neg_inverse(s.form);
    if (!applicable) {
      require(o, throws_code([&] { construct_reverser(s.matrix, sign, kDecide); }, ErrorCode::NotReversible),
              "non-reversible sign did not raise NotReversible");
      continue;
    }
    const QMatrix2 g = construct_reverser(s.matrix, sign, kDecide);
    const double res = reverser_residual(s.matrix, g, sign, kDecide);
    const double det = std::abs(det_H(g) - 1.0);
    o.residual = std::max({o.residual, res, det});
    require(o, res < kResidual, "reverser residual");
    require(o, det < kResidual, "reverser determinant");
  }
  if (!o.pass) o.detail.update({{"family", s.family}, {"matrix", s.matrix}});
  return o;
}

Outcome strong_negatives(std::mt19937_64& rng, std::size_t k, double cond) {
  const GeneratedSample s = tracked(sample_family(k % 2 == 0 ? "elliptic-distinct" : "parabolic-interior", rng, cond));
  const QMatrix2 g0 = sample_reverser(s.form, rng);
  const QMatrix2 g = s.conjugator * g0 * m_inverse(s.conjugator, 0.0);
  const double gap = distance_inf(g * g, QMatrix2::identity());
  const double res = reverser_residual(s.matrix, g, ReverserSign::Plus);
  const double scale = std::max(1.0, norm_inf(g) * norm_inf(m_inverse(g, 0.0))) * std::max(1.0, norm_inf(s.matrix));
  Outcome o{true, res / scale, gap, {}};
  require(o, res < kResidual * scale, "sampled element is not a reverser");
  require(o, gap >= 1.0, "sampled reverser squares close to I");
  if (!o.pass) o.detail.update({{"family", s.family}, {"matrix", s.matrix}, {"g", g}, {"square_gap", gap}});
  return o;
}

Outcome factorization_contracts(std::mt19937_64& rng, std::size_t k, double cond) {
  const GeneratedSample s = mixed_sample(rng, k, cond);
  const bool rev = reversible_sl(s.form);
  const bool strong = strongly_reversible_sl(s.form);
  const bool cni = conj_neg_inverse(s.form);
  struct Expect {
    FactorMode mode;
    bool applicable;
    int sign_b, sign_c;  // 0: either
  };
  const Expect expects[] = {{FactorMode::SlInvolutions, strong, 1, 1},
                            {FactorMode::SlSkew, rev, -1, -1},
                            {FactorMode::Mixed, cni, 1, -1},
                            {FactorMode::Psl, rev || cni, 0, 0}};
  Outcome o;
  for (const Expect& e : expects) {
    if (!e.applicable) {
      require(o, throws_code([&] { decompose_involutions(s.matrix, e.mode, kDecide); }, ErrorCode::NotDecomposable),
              "inapplicable mode did not raise NotDecomposable");
      continue;
    }
    const Factorization f = decompose_involutions(s.matrix, e.mode, kDecide);
    const FactorizationResiduals r = residuals(s.matrix, f);
    o.residual = std::max(o.residual, r.max());
    require(o, r.max() < kResidual, "factorization residual");
    if (e.sign_b != 0) require(o, f.sign_b == e.sign_b && f.sign_c == e.sign_c, "sign pattern");
  }
  if (!o.pass) o.detail.update({{"family", s.family}, {"matrix", s.matrix}});
  return o;
}

Outcome classification_partition(std::mt19937_64& rng, std::size_t k, double cond) {
  const GeneratedSample s = mixed_sample(rng, k, cond);
  const CharPoly cp = char_poly(s.matrix, kDecide);
  const bool diag = is_diagonalizable(s.matrix, kDecide);
  const int expected = family_case(s.form);
  const int from_coefficients = algebraic_class(cp, diag, kDecide).case_id;
  const int from_normal_form = family_case(normal_form(s.matrix, kDecide).form);
  const std::vector<int> matches = matching_cases(cp, diag, kDecide);
  Outcome o;
  require(o, from_coefficients == expected, "algebraic_class disagrees with the generated family");
  require(o, from_normal_form == expected, "normal_form family disagrees with the generated family");
  require(o, matches.size() == 1 && matches.front() == expected, "case predicates do not partition");
  if (!o.pass) {
    o.detail.update({{"family", s.family}, {"matrix", s.matrix}, {"expected", expected}, {"algebraic", from_coefficients},
                     {"normal_form", from_normal_form}, {"matches", matches}});
  }
  return o;
}

Outcome conjugation_invariance(std::mt19937_64& rng, std::size_t k, double cond) {
  const GeneratedSample s = mixed_sample(rng, k, cond);
  const QMatrix2 t = random_sl_conjugator(rng, cond);
  const QMatrix2 moved = t * s.matrix * m_inverse(t, 0.0);
  const double err = char_poly(moved, kDecide).max_abs_diff(char_poly(s.matrix, kDecide));
  const double scale = coefficient_scale(moved);
  Outcome o{true, err / scale, std::nullopt, {}};
  require(o, err < kResidual * scale, "characteristic polynomial moved under conjugation");
  require(o, forms_close(normal_form(moved, kDecide).form, s.form, 1e-6), "normal form moved under conjugation");
  require(o, dynamical_type(moved, kDecide) == dynamical_type(s.matrix, kDecide), "dynamical type moved");
  if (!o.pass) o.detail.update({{"family", s.family}, {"matrix", s.matrix}, {"conjugator", t}});
  return o;
}

Outcome extended_centralizer(std::mt19937_64& rng, std::size_t k, double cond) {
  const GeneratedSample s = mixed_sample(rng, k, cond);
  const QMatrix2 n = materialize(s.form);
  const QMatrix2 s_inv = m_inverse(s.conjugator, 0.0);
  const auto lift = [&](const QMatrix2& g) { return s.conjugator * g * s_inv; };
  const bool self_inverse = distance_inf(s.matrix, m_inverse(s.matrix, 0.0)) < 1e-6;
  Outcome o;
  const QMatrix2 h = sample_centralizer(s.form, rng);
  require(o, extended_centralizer_membership(s.matrix, lift(h), kDecide) == MembershipVerdict::Centralizer,
          "centralizer sample");
  require(o, structural_membership(s.form, h, kDecide) == extended_centralizer_membership(n, h, kDecide),
          "structural check disagrees on a centralizer sample");
  if (reversible_sl(s.form)) {
    const QMatrix2 g1 = sample_reverser(s.form, rng);
    const QMatrix2 g2 = sample_reverser(s.form, rng);
    require(o, extended_centralizer_membership(s.matrix, lift(g1 * g2), kDecide) == MembershipVerdict::Centralizer,
            "reverser * reverser is not in the centralizer");
    const MembershipVerdict mixed = extended_centralizer_membership(s.matrix, lift(g1 * h), kDecide);
    require(o, mixed == MembershipVerdict::Reverser || (self_inverse && mixed == MembershipVerdict::Centralizer),
            "reverser * centralizer is not a reverser");
    require(o, structural_membership(s.form, g1, kDecide) == extended_centralizer_membership(n, g1, kDecide),
            "structural check disagrees on a reverser sample");
  }
  if (!o.pass) o.detail.update({{"family", s.family}, {"matrix", s.matrix}});
  return o;
}

// Reversible iff the spectrum of phi(A) is closed under lambda -> 1/lambda.
bool spectrum_inverse_closed(const QMatrix2& m) {
  const Eigen::ComplexEigenSolver<CMatrix4> es(phi_embed(m), false);
  std::vector<cplx> ev(es.eigenvalues().data(), es.eigenvalues().data() + 4);
  std::vector<bool> used(4, false);
  for (const cplx& l : ev) {
    const cplx target = 1.0 / l;
    int best = -1;
    for (int j = 0; j < 4; ++j) {
      if (!used[j] && (best < 0 || std::abs(ev[j] - target) < std::abs(ev[best] - target))) best = j;
    }
    if (std::abs(ev[best] - target) > 1e-5 * std::max(1.0, std::abs(target))) return false;
    used[best] = true;
  }
  return true;
}

Outcome sl_exhaustiveness(std::mt19937_64& rng, std::size_t k, double cond) {
  const QMatrix2 m = k % 2 == 0 ? mixed_sample(rng, k / 2, cond).matrix : sl_normalize(random_matrix(rng));
  const bool direct = spectrum_inverse_closed(m);
  const bool classified = is_reversible_sl(m, kDecide);
  Outcome o;
  require(o, direct == classified, "is_reversible_sl disagrees with spectral inverse-closure");
  if (!o.pass) o.detail.update({{"matrix", m}, {"direct", direct}, {"classified", classified}});
  return o;
}

Outcome moebius_homomorphism(std::mt19937_64& rng, std::size_t k, double cond) {
  const QMatrix2 a = mixed_sample(rng, k, cond).matrix;
  const QMatrix2 b = mixed_sample(rng, k + 1, cond).matrix;
  std::normal_distribution<double> n(0.0, 1.0);
  const auto away_from_pole = [](const QMatrix2& m, const Quaternion& z) {
    return (m.c * z + m.d).norm() > 0.05 * (1.0 + z.norm());
  };
  for (;;) {
    const Quaternion z{n(rng), n(rng), n(rng), n(rng)};
    if (!away_from_pole(b, z) || !away_from_pole(a * b, z)) continue;
    const ExtendedQuaternion bz = apply_moebius(b, z);
    if (bz.is_infinity() || !away_from_pole(a, bz.value())) continue;
    const ExtendedQuaternion lhs = apply_moebius(a * b, z);
    const ExtendedQuaternion rhs = apply_moebius(a, bz);
    const double err = distance(lhs, rhs) / (1.0 + (lhs.is_infinity() ? 0.0 : lhs.value().norm()));
    Outcome o{err < kResidual, err, std::nullopt, {}};
    if (!o.pass) o.detail = {{"a", a}, {"b", b}, {"z", z}, {"error", err}};
    return o;
  }
}

Outcome moebius_lift(std::mt19937_64& rng, std::size_t k, double cond) {
  const QMatrix2 a = mixed_sample(rng, k, cond).matrix;
  std::normal_distribution<double> n(0.0, 1.0);
  const ExtendedQuaternion z = k % 7 == 0 ? ExtendedQuaternion::infinity()
                                          : ExtendedQuaternion(Quaternion{n(rng), n(rng), n(rng), n(rng)});
  const bool same = apply_moebius(a, z) == apply_moebius(-a, z);
  Outcome o{same, 0.0, std::nullopt, {}};
  if (!same) o.detail = {{"a", a}, {"z", z}};
  return o;
}

Outcome moebius_fixed_points(std::mt19937_64& rng, std::size_t k, double cond) {
  const GeneratedSample s = mixed_sample(rng, k, cond);
  const auto* d = std::get_if<DiagonalForm>(&s.form);
  const bool central = d && d->r == 1.0 && d->theta == d->phi && (d->theta == 0.0 || d->theta == pi);
  Outcome o;
  if (central) {
    require(o, throws_code([&] { fixed_points(s.matrix, kDecide); }, ErrorCode::CentralElement), "centre not rejected");
    return o;
  }
  const std::vector<ExtendedQuaternion> pts = fixed_points(s.matrix, kDecide);
  for (const ExtendedQuaternion& p : pts) {
    const double err = distance(apply_moebius(s.matrix, p), p) / (1.0 + (p.is_infinity() ? 0.0 : p.value().norm()));
    o.residual = std::max(o.residual, err);
    require(o, err < kResidual, "returned point is not fixed");
  }
  const DynamicalType type = dynamical_type(s.matrix, kDecide);
  if (type == DynamicalType::Hyperbolic) require(o, pts.size() == 2, "hyperbolic element without two fixed points");
  if (type == DynamicalType::Parabolic) require(o, pts.size() == 1, "parabolic element without one fixed point");

  if (unique_eigenlines(s.form, kDecide)) {
    const QMatrix2 t = random_sl_conjugator(rng, cond);
    const std::vector<ExtendedQuaternion> moved = fixed_points(t * s.matrix * m_inverse(t, 0.0), kDecide);
    require(o, moved.size() == pts.size(), "fixed-point count moved under conjugation");
    for (const ExtendedQuaternion& p : pts) {
      const ExtendedQuaternion image = apply_moebius(t, p);
      double best = std::numeric_limits<double>::infinity();
      for (const ExtendedQuaternion& q : moved) {
        best = std::min(best, distance(image, q) / (1.0 + (image.is_infinity() ? 0.0 : image.value().norm())));
      }
      o.residual = std::max(o.residual, best);
      require(o, best < kResidual, "fixed points are not equivariant");
    }
  }
  if (!o.pass) o.detail.update({{"family", s.family}, {"matrix", s.matrix}, {"fixed_points", pts}});
  return o;
}

Outcome embedding_soundness(std::mt19937_64& rng, std::size_t) {
  const QMatrix2 a = random_matrix(rng);
  const QMatrix2 b = random_matrix(rng);
  Outcome o;
  const double mult = (phi_embed(a * b) - phi_embed(a) * phi_embed(b)).cwiseAbs().maxCoeff();
  const cplx det = Eigen::PartialPivLU<CMatrix4>(phi_embed(a)).determinant();
  const double det_scale = std::max(1.0, std::abs(det));
  const double det_violation = std::max(std::abs(det.imag()), -det.real()) / det_scale;

  const Eigen::ComplexEigenSolver<CMatrix4> es(phi_embed(a), false);
  const auto& ev = es.eigenvalues();
  // Best of the three perfect matchings of {0,1,2,3} into conjugate pairs.
  double closure = std::numeric_limits<double>::infinity();
  for (const auto& [i, j, p, q] : {std::array{0, 1, 2, 3}, std::array{0, 2, 1, 3}, std::array{0, 3, 1, 2}}) {
    closure = std::min(closure, std::max(std::abs(ev(i) - std::conj(ev(j))), std::abs(ev(p) - std::conj(ev(q)))));
  }
  closure /= std::max(1.0, ev.cwiseAbs().maxCoeff());
  const double c0 = std::abs(char_poly(sl_normalize(a)).c0 - 1.0);

  o.residual = std::max({mult, std::max(det_violation, 0.0), closure, c0});
  require(o, mult < kEmbedding, "phi is not multiplicative");
  require(o, det_violation < kEmbedding, "det phi(A) is not a non-negative real");
  require(o, closure < kEmbedding, "spectrum of phi(A) is not closed under conjugation");
  require(o, c0 < kEmbedding, "c0 != 1 after sl_normalize");
  if (!o.pass) o.detail.update({{"a", a}, {"b", b}});
  return o;
}

Outcome char_poly_routes(std::mt19937_64& rng, std::size_t) {
  const QMatrix2 a = random_matrix(rng);
  const double err = char_poly(a).max_abs_diff(char_poly_newton(a)) / coefficient_scale(a);
  Outcome o{err < kEmbedding, err, std::nullopt, {}};
  if (!o.pass) o.detail = {{"a", a}, {"error", err}};
  return o;
}

Outcome involution_classification(std::mt19937_64& rng, std::size_t k, double cond) {
  static const char* families[] = {"involution", "skew-involution", "central", "case-1"};
  const GeneratedSample s = tracked(sample_family(families[k % 4], rng, cond));
  const InvolutionClass c = classify_involution(s.matrix, kDecide);
  Outcome o;
  switch (k % 4) {
    case 0: require(o, c.kind == InvolutionKind::PlusInvolution, "involution not recognised"); break;
    case 1: require(o, c.kind == InvolutionKind::SkewInvolution, "skew-involution not recognised"); break;
    case 2:
      require(o, c.kind == InvolutionKind::CentralPlus || c.kind == InvolutionKind::CentralMinus, "centre not recognised");
      break;
    default: require(o, c.kind == InvolutionKind::NotInvolution, "false involution"); break;
  }
  if (o.pass && (c.kind == InvolutionKind::PlusInvolution || c.kind == InvolutionKind::SkewInvolution)) {
    const QMatrix2 target = c.kind == InvolutionKind::PlusInvolution
                                ? QMatrix2::diag(Quaternion(1), Quaternion(-1))
                                : QMatrix2::antidiag(Quaternion(1), Quaternion(-1));
    const QMatrix2& w = *c.witness;
    const double res = distance_inf(w * target * m_inverse(w, 0.0), s.matrix);
    const double scale = std::max(1.0, norm_inf(w) * norm_inf(m_inverse(w, 0.0)));
    o.residual = res / scale;
    require(o, res < kResidual * scale, "witness does not conjugate the canonical involution");
  }
  if (!o.pass) o.detail.update({{"family", s.family}, {"matrix", s.matrix}, {"verdict", c}});
  return o;
}

std::vector<Check> checks(double cond) {
  const auto with_cond = [cond](auto fn) -> SampleFn {
    return [fn, cond](std::mt19937_64& rng, std::size_t k) { return fn(rng, k, cond); };
  };
  return {
      {"theorem-1.1-equivalence", "", with_cond(theorem_equivalence)},
      {"coefficient-identities", "", coefficient_identities},
      {"coefficient-biconditionals", "stated_necessity_counterexamples", coefficient_biconditionals, true},
      {"reverser-validity", "", with_cond(reverser_validity)},
      {"strong-reversibility-negatives", "min_square_gap", with_cond(strong_negatives)},
      {"factorization-contracts", "", with_cond(factorization_contracts)},
      {"classification-partition", "", with_cond(classification_partition)},
      {"conjugation-invariance", "", with_cond(conjugation_invariance)},
      {"extended-centralizer", "", with_cond(extended_centralizer)},
      {"sl-reversibility-exhaustive", "", with_cond(sl_exhaustiveness)},
      {"moebius-homomorphism", "", with_cond(moebius_homomorphism)},
      {"moebius-lift", "", with_cond(moebius_lift)},
      {"moebius-fixed-points", "", with_cond(moebius_fixed_points)},
      {"embedding-soundness", "", embedding_soundness},
      {"char-poly-routes", "", char_poly_routes},
      {"involution-classification", "", with_cond(involution_classification)},
  };
}

template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t k = next++; k < n; k = next++) fn(k);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
}

}  // namespace

bool VerifySuiteResult::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.failed == 0; });
}

VerifySuiteResult run_verify(const Options& opt) {
  const auto start = std::chrono::steady_clock::now();
  const unsigned threads = opt.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : opt.threads;
  VerifySuiteResult result;
  result.seed = opt.seed;
  result.samples = opt.samples;

  const std::vector<Check> all = checks(opt.cond);
  for (std::size_t c = 0; c < all.size(); ++c) {
    std::vector<Outcome> outcomes(opt.samples);
    parallel_for(opt.samples, threads, [&](std::size_t k) {
      auto rng = sample_rng(opt.seed, c + 1, k);
      t_inputs = json::array();
      try {
        outcomes[k] = all[c].fn(rng, k);
      } catch (const std::exception& e) {
        outcomes[k] = fail({{"exception", e.what()}, {"inputs", t_inputs}});
      }
    });

    CheckResult r;
    r.name = all[c].name;
    r.samples = opt.samples;
    std::optional<double> observed;
    for (std::size_t k = 0; k < outcomes.size(); ++k) {
      const Outcome& o = outcomes[k];
      r.max_residual = std::max(r.max_residual, o.residual);
      if (o.observed) {
        observed = !observed ? *o.observed
                   : all[c].sum_observed ? *observed + *o.observed
                                         : std::min(*observed, *o.observed);
      }
      if (o.pass) {
        ++r.passed;
        continue;
      }
      ++r.failed;
      if (r.counterexamples.size() < kMaxCounterexamples) {
        json cx = o.detail;
        cx["sample"] = k;
        r.counterexamples.push_back(std::move(cx));
      }
    }
    if (!all[c].observed_label.empty() && observed) {
      r.statistic_name = all[c].observed_label;
      r.statistic = *observed;
    }
    result.checks.push_back(std::move(r));
  }
  result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

json to_json(const VerifySuiteResult& r, bool timing) {
  json checks = json::array();
  for (const CheckResult& c : r.checks) {
    json j{{"name", c.name},
           {"samples", c.samples},
           {"passed", c.passed},
           {"failed", c.failed},
           {"max_residual", c.max_residual},
           {"counterexamples", c.counterexamples}};
    if (c.statistic) j[c.statistic_name] = *c.statistic;
    checks.push_back(std::move(j));
  }
  json out{{"seed", r.seed}, {"samples", r.samples}, {"ok", r.ok()}, {"checks", checks}};
  if (timing) out["wall_seconds"] = r.wall_seconds;
  return out;
}

}  // namespace quatmob::cli
