#pragma once

#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <string_view>

#include "quatmob/qmatrix.hpp"
#include "quatmob/spectral.hpp"

namespace quatmob {

/// Plus: g A g^-1 = A^-1.  Minus: g A g^-1 = -A^-1.
enum class ReverserSign { Plus, Minus };

/// Which involution pattern a factorization A = B C must satisfy.
///   SlInvolutions  B^2 = C^2 = I
///   SlSkew         B^2 = C^2 = -I
///   Mixed          B^2 = I, C^2 = -I (A conjugate to -A^-1)
///   Psl            any of the above; B and C project to involutions of PSL(2,H)
enum class FactorMode { SlInvolutions, SlSkew, Mixed, Psl };

std::string_view to_string(ReverserSign s) noexcept;
std::string_view to_string(FactorMode m) noexcept;

struct Factorization {
  QMatrix2 b;
  QMatrix2 c;
  int sign_b = 1;  // b^2 = sign_b * I
  int sign_c = 1;  // c^2 = sign_c * I
  FactorMode realized = FactorMode::SlInvolutions;
};

struct FactorizationResiduals {
  double b_square = 0.0;  // |b^2 - sign_b I|
  double c_square = 0.0;  // |c^2 - sign_c I|
  double product = 0.0;   // |b c - A|

  double max() const;
};

FactorizationResiduals residuals(const QMatrix2& m, const Factorization& f);

/// |g A g^-1 - sign A^-1|_inf
double reverser_residual(const QMatrix2& m, const QMatrix2& g, ReverserSign sign, double tol = kClassifyTol);

// Predicates on canonical normal forms.
bool reversible_sl(const NormalForm& form, double tol = kClassifyTol);
bool strongly_reversible_sl(const NormalForm& form, double tol = kClassifyTol);
bool conj_neg_inverse(const NormalForm& form, double tol = kClassifyTol);

/// Each of these computes normal_form(A) and requires det_H(A) = 1 within tol.
bool is_reversible_sl(const QMatrix2& m, double tol = kClassifyTol);
bool is_strongly_reversible_sl(const QMatrix2& m, double tol = kClassifyTol);
bool is_conj_neg_inverse(const QMatrix2& m, double tol = kClassifyTol);

/// Reversers for the canonical representatives themselves. The plus-sign
/// table is the skew family (j 0; 0 j), (0 j; j 0), (-e^{-2it} j 0; 0 j),
/// with I for the centre. Throws Error{NotReversible} when none exists.
QMatrix2 table_reverser(const NormalForm& form, ReverserSign sign, double tol = kClassifyTol);
/// A reverser with g^2 = I, or Error{NotDecomposable}.
QMatrix2 table_involutive_reverser(const NormalForm& form, double tol = kClassifyTol);
/// A reverser with g^2 = -I, or Error{NotDecomposable}.
QMatrix2 table_skew_reverser(const NormalForm& form, double tol = kClassifyTol);

/// g in SL(2,H) with g A g^-1 = +-A^-1, obtained by conjugating the table
/// reverser of the normal form with its witness.
QMatrix2 construct_reverser(const QMatrix2& m, ReverserSign sign, double tol = kClassifyTol);

/// A = B C with B, C squaring to +-I as the mode requires.
/// Throws Error{NotDecomposable} when the mode does not apply to A.
Factorization decompose_involutions(const QMatrix2& m, FactorMode mode, double tol = kClassifyTol);

struct ReversibilityReport {
  bool reversible_sl = false;
  bool strongly_reversible_sl = false;
  bool conj_neg_inverse = false;
  bool reversible_psl = false;
  bool strongly_reversible_psl = false;
  bool c1_sq_eq_c3_sq = false;
  double c1_sq_minus_c3_sq = 0.0;
  std::optional<QMatrix2> reverser;
  std::optional<ReverserSign> reverser_sign;
  double reverser_residual = 0.0;
  std::optional<Factorization> factorization;
  FactorizationResiduals factorization_residuals;
  std::string note;
};

/// Full verdict for SL(2,H) and PSL(2,H). PSL reversibility is computed
/// from the normal form and from c1^2 = c3^2; disagreement raises
/// Error{InternalInconsistency}.
ReversibilityReport psl_report(const QMatrix2& m, double tol = kClassifyTol);

enum class MembershipVerdict { Centralizer, Reverser, NegReverser, None };
std::string_view to_string(MembershipVerdict v) noexcept;

/// Which of Z(A), R(A), S(A) contains g, tested numerically.
/// Throws Error{NotUnitDeterminant} when det_H(g) != 1 within tol.
MembershipVerdict extended_centralizer_membership(const QMatrix2& m, const QMatrix2& g, double tol = kClassifyTol);

/// Same question answered from the entry patterns of the centralizer of a
/// canonical representative and the coset relations R = Z g_+, S = Z g_-.
MembershipVerdict structural_membership(const NormalForm& form, const QMatrix2& g, double tol = kClassifyTol);

/// Random element of the centralizer of materialize(form), det_H = 1.
QMatrix2 sample_centralizer(const NormalForm& form, std::mt19937_64& rng, double tol = kClassifyTol);
/// Random element of the reverser set of materialize(form), det_H = 1.
/// Throws Error{NotReversible} if the form is not reversible.
QMatrix2 sample_reverser(const NormalForm& form, std::mt19937_64& rng, double tol = kClassifyTol);

enum class InvolutionKind { PlusInvolution, SkewInvolution, CentralPlus, CentralMinus, NotInvolution };
std::string_view to_string(InvolutionKind k) noexcept;

struct InvolutionClass {
  InvolutionKind kind = InvolutionKind::NotInvolution;
  /// W with W K W^-1 = A, K = diag(1,-1) or (0 1; -1 0).
  std::optional<QMatrix2> witness;
};

InvolutionClass classify_involution(const QMatrix2& m, double tol = kClassifyTol);

std::ostream& operator<<(std::ostream& os, MembershipVerdict v);

}  // namespace quatmob
