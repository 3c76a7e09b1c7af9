#include "krein/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <lapacke.h>

#include "krein/errors.hpp"

namespace krein::linalg {

namespace {

// Eigen 3.4's BDCSVD mis-deflates exactly repeated singular values, which are
// routine here (projections of orthonormal bases), so everything goes through
// LAPACK's QR-iteration driver.
Svd lapack_svd(const Matrix& a, bool vectors) {
  const lapack_int m = lapack_int(a.rows());
  const lapack_int n = lapack_int(a.cols());
  const lapack_int k = std::min(m, n);
  Matrix work = a;
  Svd out;
  out.s.resize(k);
  Matrix u(vectors ? m : 1, vectors ? k : 1);
  Matrix vt(vectors ? k : 1, vectors ? n : 1);
  RealVector superb(std::max<lapack_int>(1, k - 1));
  const char job = vectors ? 'S' : 'N';
  const lapack_int info = LAPACKE_zgesvd(
      LAPACK_COL_MAJOR, job, job, m, n, reinterpret_cast<lapack_complex_double*>(work.data()),
      m, out.s.data(), reinterpret_cast<lapack_complex_double*>(u.data()), std::max<lapack_int>(1, m),
      reinterpret_cast<lapack_complex_double*>(vt.data()), std::max<lapack_int>(1, k),
      superb.data());
  if (info != 0) throw NumericalRankFailure("svd: LAPACK zgesvd failed to converge");
  if (vectors) {
    out.U = std::move(u);
    out.V = vt.adjoint();
  }
  return out;
}

Svd thin_svd(const Matrix& a) { return lapack_svd(a, true); }

Index count_above(const RealVector& sv, double rel_cutoff) {
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double cut = rel_cutoff * sv(0);
  Index r = 0;
  while (r < sv.size() && sv(r) > cut) ++r;
  return r;
}

}  // namespace

Svd svd(const Matrix& a) {
  if (a.size() == 0) return {Matrix(a.rows(), 0), RealVector(0), Matrix(a.cols(), 0)};
  return lapack_svd(a, true);
}

RealVector singular_values(const Matrix& a) {
  if (a.size() == 0) return RealVector(0);
  return lapack_svd(a, false).s;
}

Matrix orth(const Matrix& a, double rel_cutoff) {
  if (a.cols() == 0 || a.rows() == 0) return Matrix(a.rows(), 0);
  const Svd d = thin_svd(a);
  return d.U.leftCols(count_above(d.s, rel_cutoff));
}

Matrix orth_abs(const Matrix& a, double abs_cutoff) {
  if (a.cols() == 0 || a.rows() == 0) return Matrix(a.rows(), 0);
  const Svd d = thin_svd(a);
  Index r = 0;
  while (r < d.s.size() && d.s(r) > abs_cutoff) ++r;
  return d.U.leftCols(r);
}

Index rank(const Matrix& a, double rel_cutoff) {
  if (a.cols() == 0 || a.rows() == 0) return 0;
  return count_above(singular_values(a), rel_cutoff);
}

Matrix complement(const Matrix& basis) {
  const Index n = basis.rows();
  const Index k = basis.cols();
  if (k == 0) return identity(n);
  if (k >= n) return Matrix(n, 0);
  Matrix residual = identity(n) - basis * basis.adjoint();
  // The residual projector has eigenvalue 1 on the complement, 0 on the span.
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(residual));
  return es.eigenvectors().rightCols(n - k);
}

Matrix projector(const Matrix& basis) { return basis * basis.adjoint(); }

Matrix identity(Index n) { return Matrix::Identity(n, n); }

double op_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  return singular_values(a)(0);
}

double hermitian_defect(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  return op_norm(a - a.adjoint());
}

Matrix hermitian_part(const Matrix& a) { return 0.5 * (a + a.adjoint()); }

RealVector eigenvalues(const Matrix& h) {
  if (h.size() == 0) return RealVector(0);
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(h), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

Matrix psd_sqrt(const Matrix& h, double clamp) {
  const Index n = h.rows();
  if (n == 0) return Matrix(0, 0);
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(h));
  RealVector ev = es.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  for (Index i = 0; i < n; ++i) {
    if (ev(i) < 0.0) {
      if (ev(i) < -clamp * scale) {
        throw InvariantViolation("psd_sqrt: eigenvalue " + std::to_string(ev(i)) +
                                 " is not positive semidefinite");
      }
      ev(i) = 0.0;
    }
  }
  const Matrix& v = es.eigenvectors();
  return v * ev.cwiseSqrt().cast<cplx>().asDiagonal() * v.adjoint();
}

Matrix psd_range(const Matrix& h, double abs_tol) {
  const Index n = h.rows();
  if (n == 0) return Matrix(0, 0);
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(h));
  const RealVector& ev = es.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  Index first = 0;
  while (first < n && ev(first) <= abs_tol * scale) ++first;
  return es.eigenvectors().rightCols(n - first);
}

Index intersection_dim(const Matrix& a, const Matrix& b, double tol) {
  if (a.cols() == 0 || b.cols() == 0) return 0;
  const RealVector sv = singular_values(a.adjoint() * b);
  Index count = 0;
  for (Index i = 0; i < sv.size(); ++i) {
    if (sv(i) >= 1.0 - tol) ++count;
  }
  return count;
}

double subspace_distance(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) return 1.0;
  if (a.cols() == 0) return 0.0;
  return std::max(containment_residual(a, b), containment_residual(b, a));
}

double containment_residual(const Matrix& a, const Matrix& b) {
  if (a.cols() == 0) return 0.0;
  if (b.cols() == 0) return 1.0;
  return op_norm(a - b * (b.adjoint() * a));
}

bool in_order_interval(const Matrix& lo, const Matrix& h, const Matrix& hi, double tol) {
  if (h.size() == 0) return true;
  return eigenvalues(h - lo).minCoeff() >= -tol && eigenvalues(hi - h).minCoeff() >= -tol;
}

}  // namespace krein::linalg
