#pragma once

#include <iosfwd>
#include <variant>
#include <vector>

#include "quatmob/qmatrix.hpp"
#include "quatmob/quaternion.hpp"

namespace quatmob {

/// Default tolerance for spectral and classification decisions.
inline constexpr double kClassifyTol = 1e-8;

struct EigenClass {
  ClassRep rep;
  int multiplicity = 0;  // quaternionic count, 1 or 2
};

/// Eigenvalue classes of a 2x2 quaternionic matrix, ordered by modulus
/// (descending) then angle (ascending). Multiplicities sum to 2.
struct EigenSpectrum {
  std::vector<EigenClass> classes;
};

/// diag(r e^{i theta}, r^-1 e^{i phi}); canonical when r >= 1 and, for r == 1, theta <= phi.
struct DiagonalForm {
  double r = 1.0;
  double theta = 0.0;
  double phi = 0.0;
};

/// (e^{i theta} 1; 0 e^{i theta})
struct ParabolicForm {
  double theta = 0.0;
};

using NormalForm = std::variant<DiagonalForm, ParabolicForm>;

QMatrix2 materialize(const NormalForm& form);

/// S with S * materialize(form) * S^-1 = A and det_H(S) = 1.
struct ConjugacyWitness {
  QMatrix2 s = QMatrix2::identity();
};

struct NormalFormResult {
  NormalForm form;
  ConjugacyWitness witness;
};

/// Eigenvalues of phi(A) closer than sqrt(tol) (relative to their size) are
/// merged into one cluster: a defective double eigenvalue splits at the
/// square root of the perturbation, so a linear threshold would separate it.
/// Throws Error{ClusteringAmbiguity} when clusters do not pair up as {l, conj(l)}.
EigenSpectrum eigenvalue_classes(const QMatrix2& m, double tol = kClassifyTol);

/// Geometric vs algebraic multiplicity of every eigenvalue of phi(A); singular
/// values of phi(A) - l I below tol * max(1, |phi(A)|_2) count as zero.
bool is_diagonalizable(const QMatrix2& m, double tol = kClassifyTol);

/// Canonical conjugacy representative and witness. Requires det_H(A) = 1
/// within tol (Error{NotUnitDeterminant}); Error{NumericalBreakdown} when the
/// witness residual exceeds 1e-6 relative to |A|.
NormalFormResult normal_form(const QMatrix2& m, double tol = kClassifyTol);

/// Unit right eigenvector v with A v = v lambda, lambda the complex class rep.
/// Throws Error{NotAnEigenclass} when cls is not an eigenvalue class of A.
QVector2 right_eigenvector(const QMatrix2& m, const ClassRep& cls, double tol = kClassifyTol);

bool is_parabolic(const NormalForm& form);

std::ostream& operator<<(std::ostream& os, const NormalForm& form);

}  // namespace quatmob
