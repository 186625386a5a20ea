#include "quatmob/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <ostream>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include "quatmob/error.hpp"

namespace quatmob {

namespace {

using cplx = std::complex<double>;
using KernelBasis = Eigen::Matrix<cplx, 4, Eigen::Dynamic>;

// One eigenvalue class of phi(A), represented by its member with Im >= 0.
struct Cluster {
  cplx value;
  int size = 0;  // algebraic multiplicity of `value` as an eigenvalue of phi(A)
  bool real = false;
  ClassRep rep;
  int multiplicity = 0;  // quaternionic multiplicity
};

struct Analysis {
  CMatrix4 phi;
  double scale = 1.0;
  std::vector<Cluster> clusters;
};

double relative_gap(double tol, cplx a, cplx b) {
  return std::sqrt(tol) * std::max({1.0, std::abs(a), std::abs(b)});
}

Analysis analyze(const QMatrix2& m, double tol) {
  Analysis out;
  out.phi = phi_embed(m);
  Eigen::JacobiSVD<CMatrix4> norms(out.phi);
  out.scale = std::max(1.0, norms.singularValues()(0));

  Eigen::ComplexEigenSolver<CMatrix4> solver(out.phi, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::NumericalBreakdown, "eigenvalue iteration failed");
  std::array<cplx, 4> ev;
  for (int k = 0; k < 4; ++k) ev[k] = solver.eigenvalues()(k);

  // Single-linkage clustering.
  std::array<int, 4> parent{0, 1, 2, 3};
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int p = 0; p < 4; ++p) {
    for (int q = p + 1; q < 4; ++q) {
      if (std::abs(ev[p] - ev[q]) <= relative_gap(tol, ev[p], ev[q])) parent[find(p)] = find(q);
    }
  }
  struct Group {
    cplx mean;
    int size = 0;
  };
  std::vector<Group> groups;
  for (int root = 0; root < 4; ++root) {
    if (find(root) != root) continue;
    Group g;
    for (int k = 0; k < 4; ++k) {
      if (find(k) == root) {
        g.mean += ev[k];
        ++g.size;
      }
    }
    g.mean /= static_cast<double>(g.size);
    for (int k = 0; k < 4; ++k) {
      if (find(k) == root && std::abs(ev[k] - g.mean) > relative_gap(tol, g.mean, g.mean)) {
        throw Error(ErrorCode::ClusteringAmbiguity, "eigenvalue cluster wider than the merge threshold");
      }
    }
    groups.push_back(g);
  }

  std::vector<Group> upper;
  std::vector<Group> lower;
  for (const Group& g : groups) {
    if (std::abs(g.mean.imag()) <= relative_gap(tol, g.mean, g.mean)) {
      if (g.size % 2 != 0) throw Error(ErrorCode::ClusteringAmbiguity, "real eigenvalue with odd multiplicity");
      Cluster c;
      c.value = cplx(g.mean.real(), 0.0);
      c.size = g.size;
      c.real = true;
      c.rep = {std::abs(g.mean.real()), g.mean.real() < 0.0 ? std::numbers::pi : 0.0};
      c.multiplicity = g.size / 2;
      out.clusters.push_back(c);
    } else {
      (g.mean.imag() > 0.0 ? upper : lower).push_back(g);
    }
  }
  if (upper.size() != lower.size()) throw Error(ErrorCode::ClusteringAmbiguity, "unpaired complex eigenvalue");
  std::vector<bool> used(lower.size(), false);
  for (const Group& u : upper) {
    bool paired = false;
    for (std::size_t k = 0; k < lower.size(); ++k) {
      if (used[k] || lower[k].size != u.size) continue;
      if (std::abs(u.mean - std::conj(lower[k].mean)) <= relative_gap(tol, u.mean, u.mean)) {
        used[k] = true;
        paired = true;
        Cluster c;
        c.value = 0.5 * (u.mean + std::conj(lower[k].mean));
        c.size = u.size;
        c.real = false;
        c.rep = {std::abs(c.value), std::arg(c.value)};
        c.multiplicity = u.size;
        out.clusters.push_back(c);
        break;
      }
    }
    if (!paired) throw Error(ErrorCode::ClusteringAmbiguity, "eigenvalues do not pair as {l, conj(l)}");
  }
  std::sort(out.clusters.begin(), out.clusters.end(), [](const Cluster& x, const Cluster& y) {
    if (x.rep.modulus != y.rep.modulus) return x.rep.modulus > y.rep.modulus;
    return x.rep.angle < y.rep.angle;
  });
  int total = 0;
  for (const Cluster& c : out.clusters) total += c.multiplicity;
  if (total != 2) throw Error(ErrorCode::ClusteringAmbiguity, "multiplicities do not sum to 2");
  return out;
}

CMatrix4 shifted(const CMatrix4& phi, cplx lambda) { return phi - lambda * CMatrix4::Identity(); }

int nullity(const CMatrix4& shifted_phi, double tol, double scale) {
  Eigen::JacobiSVD<CMatrix4> svd(shifted_phi);
  int count = 0;
  for (int k = 0; k < 4; ++k) {
    if (svd.singularValues()(k) <= tol * scale) ++count;
  }
  return count;
}

// Right singular vectors for the `dim` smallest singular values.
KernelBasis kernel_basis(const CMatrix4& mat, int dim) {
  Eigen::JacobiSVD<CMatrix4> svd(mat, Eigen::ComputeFullV);
  return svd.matrixV().rightCols(dim);
}

// Column-reduces K so that its pivot rows form an identity block, with
// columns ordered by pivot row. Makes the basis independent of the
// arbitrary unitary mixing the SVD returns.
KernelBasis canonical_basis(KernelBasis basis) {
  const int cols = static_cast<int>(basis.cols());
  std::vector<int> pivot_row(cols, -1);
  std::array<bool, 4> row_used{false, false, false, false};
  for (int j = 0; j < cols; ++j) {
    int best = -1;
    double best_abs = -1.0;
    for (int r = 0; r < 4; ++r) {
      if (row_used[r]) continue;
      if (std::abs(basis(r, j)) > best_abs * (1.0 + 1e-9)) {
        best_abs = std::abs(basis(r, j));
        best = r;
      }
    }
    if (best < 0 || best_abs == 0.0) throw Error(ErrorCode::NumericalBreakdown, "degenerate kernel basis");
    row_used[best] = true;
    pivot_row[j] = best;
    basis.col(j) /= basis(best, j);
    for (int l = 0; l < cols; ++l) {
      if (l != j) basis.col(l) -= basis(best, l) * basis.col(j);
    }
  }
  std::vector<int> order(cols);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) { return pivot_row[x] < pivot_row[y]; });
  KernelBasis sorted(4, cols);
  for (int j = 0; j < cols; ++j) sorted.col(j) = basis.col(order[j]);
  return sorted;
}

// Unit scalar u such that v * u has a real positive dominant entry when
// lambda is real (any unit quaternion keeps v an eigenvector), or a real
// positive complex part otherwise (only complex units commute with lambda).
Quaternion canonical_phase(const QVector2& v, bool real_eigenvalue) {
  const Quaternion& p = v.v1.norm() >= v.v2.norm() * (1.0 - 1e-9) ? v.v1 : v.v2;
  const double n = p.norm();
  if (n == 0.0) return Quaternion(1);
  if (real_eigenvalue) return p.conj() / n;
  const cplx z1 = p.complex_part();
  if (std::abs(z1) > 1e-8 * n) return Quaternion::from_complex(std::conj(z1) / std::abs(z1));
  const cplx z2 = p.j_part();
  return Quaternion::from_complex(z2 / std::abs(z2));
}

QVector2 normalized(const QVector2& v) {
  const double n = v.norm();
  if (n == 0.0) throw Error(ErrorCode::NumericalBreakdown, "zero eigenvector");
  return {v.v1 / n, v.v2 / n};
}

QVector2 canonical_vector(const QVector2& v, bool real_eigenvalue) {
  return normalized(v.times(canonical_phase(v, real_eigenvalue)));
}

double raw_study_det(const QMatrix2& s) { return std::abs(Eigen::PartialPivLU<CMatrix4>(phi_embed(s)).determinant()); }

QMatrix2 unit_determinant(const QMatrix2& s) {
  const double det = raw_study_det(s);
  if (!(det > 1e-14)) throw Error(ErrorCode::NumericalBreakdown, "conjugating matrix is singular");
  return (1.0 / std::sqrt(std::sqrt(det))) * s;
}

KernelBasis eigenspace(const Analysis& an, const Cluster& c, double tol) {
  const CMatrix4 shifted_phi = shifted(an.phi, c.value);
  const int dim = nullity(shifted_phi, tol, an.scale);
  if (dim == 0) throw Error(ErrorCode::NumericalBreakdown, "eigenvalue has an empty eigenspace");
  return canonical_basis(kernel_basis(shifted_phi, dim));
}

QVector2 eigenvector_of(const Analysis& an, const Cluster& c, double tol) {
  const KernelBasis basis = eigenspace(an, c, tol);
  return canonical_vector(psi_unembed(basis.col(0)), c.real);
}

bool all_semisimple(const Analysis& an, double tol) {
  return std::all_of(an.clusters.begin(), an.clusters.end(), [&](const Cluster& c) {
    return nullity(shifted(an.phi, c.value), tol, an.scale) == c.size;
  });
}

NormalFormResult diagonal_form(const Analysis& an, double tol) {
  if (an.clusters.size() == 2) {
    const Cluster* first = &an.clusters[0];
    const Cluster* second = &an.clusters[1];
    double r = std::sqrt(first->rep.modulus / second->rep.modulus);
    if (std::abs(r - 1.0) <= tol) {
      r = 1.0;
      if (first->rep.angle > second->rep.angle) std::swap(first, second);
    }
    const QVector2 v = eigenvector_of(an, *first, tol);
    const QVector2 w = eigenvector_of(an, *second, tol);
    return {DiagonalForm{r, first->rep.angle, second->rep.angle},
            ConjugacyWitness{unit_determinant(QMatrix2::from_columns(v, w))}};
  }
  // One class of multiplicity two: pick two right-independent eigenvectors.
  const Cluster& c = an.clusters.front();
  const KernelBasis basis = eigenspace(an, c, tol);
  if (basis.cols() < 2) throw Error(ErrorCode::NumericalBreakdown, "semisimple class with a one-dimensional eigenspace");
  const QVector2 v = canonical_vector(psi_unembed(basis.col(0)), c.real);
  QVector2 best;
  double best_det = -1.0;
  for (int j = 1; j < basis.cols(); ++j) {
    const QVector2 w = canonical_vector(psi_unembed(basis.col(j)), c.real);
    const double det = raw_study_det(QMatrix2::from_columns(v, w));
    if (det > best_det * (1.0 + 1e-9)) {
      best_det = det;
      best = w;
    }
  }
  return {DiagonalForm{1.0, c.rep.angle, c.rep.angle}, ConjugacyWitness{unit_determinant(QMatrix2::from_columns(v, best))}};
}

// Jordan chain A v = v l, A w = v + w l, built in the phi picture as
// x in ker (phi - l)^2 maximizing |(phi - l) x|, u = (phi - l) x.
NormalFormResult parabolic_form(const Analysis& an) {
  if (an.clusters.size() != 1) throw Error(ErrorCode::NumericalBreakdown, "defective matrix with two eigenvalue classes");
  const Cluster& c = an.clusters.front();
  const CMatrix4 shifted_phi = shifted(an.phi, c.value);
  const KernelBasis generalized = kernel_basis((shifted_phi * shifted_phi).eval(), c.size);
  const KernelBasis image = shifted_phi * generalized;
  Eigen::JacobiSVD<Eigen::Matrix<cplx, 4, Eigen::Dynamic>> svd(image, Eigen::ComputeFullV);
  const CVector4 x = generalized * svd.matrixV().col(0);
  const CVector4 u = shifted_phi * x;

  QVector2 w = psi_unembed(x);
  QVector2 v = psi_unembed(u);
  const Quaternion phase = canonical_phase(w, c.real);
  w = w.times(phase);
  v = v.times(phase);
  return {ParabolicForm{c.rep.angle}, ConjugacyWitness{unit_determinant(QMatrix2::from_columns(v, w))}};
}

}  // namespace

QMatrix2 materialize(const NormalForm& form) {
  if (const auto* d = std::get_if<DiagonalForm>(&form)) {
    return QMatrix2::diag(Quaternion::polar_i(d->r, d->theta), Quaternion::polar_i(1.0 / d->r, d->phi));
  }
  const auto& p = std::get<ParabolicForm>(form);
  const Quaternion l = Quaternion::polar_i(1.0, p.theta);
  return {l, Quaternion(1), Quaternion(), l};
}

bool is_parabolic(const NormalForm& form) { return std::holds_alternative<ParabolicForm>(form); }

EigenSpectrum eigenvalue_classes(const QMatrix2& m, double tol) {
  const Analysis an = analyze(m, tol);
  EigenSpectrum out;
  for (const Cluster& c : an.clusters) out.classes.push_back({c.rep, c.multiplicity});
  return out;
}

bool is_diagonalizable(const QMatrix2& m, double tol) { return all_semisimple(analyze(m, tol), tol); }

NormalFormResult normal_form(const QMatrix2& m, double tol) {
  const double det = det_H(m, tol);
  if (std::abs(det - 1.0) > tol) {
    throw Error(ErrorCode::NotUnitDeterminant, "det_H(A) = " + std::to_string(det));
  }
  const Analysis an = analyze(m, tol);
  NormalFormResult result = all_semisimple(an, tol) ? diagonal_form(an, tol) : parabolic_form(an);

  const QMatrix2& s = result.witness.s;
  const QMatrix2 rebuilt = s * materialize(result.form) * m_inverse(s, tol);
  const double residual = distance_inf(rebuilt, m);
  if (residual > 1e-6 * std::max(1.0, norm_inf(m))) {
    throw Error(ErrorCode::NumericalBreakdown, "witness residual " + std::to_string(residual));
  }
  return result;
}

QVector2 right_eigenvector(const QMatrix2& m, const ClassRep& cls, double tol) {
  const Analysis an = analyze(m, tol);
  const cplx target = cls.as_complex();
  for (const Cluster& c : an.clusters) {
    if (std::abs(c.value - target) <= relative_gap(tol, c.value, target)) return eigenvector_of(an, c, tol);
  }
  throw Error(ErrorCode::NotAnEigenclass, "class is not an eigenvalue class of A");
}

std::ostream& operator<<(std::ostream& os, const NormalForm& form) {
  if (const auto* d = std::get_if<DiagonalForm>(&form)) {
    return os << "Diagonal{r=" << d->r << ", theta=" << d->theta << ", phi=" << d->phi << '}';
  }
  return os << "Parabolic{theta=" << std::get<ParabolicForm>(form).theta << '}';
}

}  // namespace quatmob
