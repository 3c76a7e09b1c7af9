#pragma once

#include <complex>

#include <Eigen/Dense>

#include "krein/tolerances.hpp"

namespace krein {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

namespace linalg {

/// Thin SVD a = U diag(s) V*, singular values descending.
struct Svd {
  Matrix U;
  RealVector s;
  Matrix V;
};

Svd svd(const Matrix& a);
RealVector singular_values(const Matrix& a);

/// Orthonormal basis for the column span of `a`. Singular values below
/// `rel_cutoff * sigma_max` are treated as zero. Returns an n x 0 matrix for
/// the zero span.
Matrix orth(const Matrix& a, double rel_cutoff = kDefaultTolerances.rank);

/// Orthonormal basis for the column span keeping singular values above an
/// absolute cutoff. Used where singular values are known to be 0 or 1.
Matrix orth_abs(const Matrix& a, double abs_cutoff);

/// Numerical rank with the same relative cutoff as orth().
Index rank(const Matrix& a, double rel_cutoff = kDefaultTolerances.rank);

/// Orthonormal basis of the orthogonal complement of span(basis) in C^n.
/// `basis` must have orthonormal columns.
Matrix complement(const Matrix& basis);

/// Orthogonal projector onto span(basis); `basis` orthonormal.
Matrix projector(const Matrix& basis);

Matrix identity(Index n);

/// Operator 2-norm (largest singular value).
double op_norm(const Matrix& a);

double hermitian_defect(const Matrix& a);
Matrix hermitian_part(const Matrix& a);

/// Eigenvalues of a Hermitian matrix in ascending order.
RealVector eigenvalues(const Matrix& h);

/// Square root of a Hermitian positive semidefinite matrix via its spectral
/// decomposition. Eigenvalues in [-clamp * max(1, ||h||), 0) are clamped to
/// zero; anything more negative throws InvariantViolation.
Matrix psd_sqrt(const Matrix& h, double clamp = kDefaultTolerances.psd_clamp);

/// Orthonormal eigenbasis of the range of a Hermitian PSD matrix, keeping
/// eigenvalues above `abs_tol * max(1, ||h||)`.
Matrix psd_range(const Matrix& h, double abs_tol = kDefaultTolerances.psd_rank);

/// Dimension of span(a) ∩ span(b) for orthonormal a, b: the number of
/// principal angles whose cosine is at least 1 - tol.
Index intersection_dim(const Matrix& a, const Matrix& b, double tol = 1e-10);

/// Largest principal-angle sine between two equidimensional spans.
double subspace_distance(const Matrix& a, const Matrix& b);

/// Maximal residual ||(I - P_b) a|| over unit columns of orthonormal a.
double containment_residual(const Matrix& a, const Matrix& b);

/// Is the Hermitian matrix h within the semidefinite order interval
/// lo <= h <= hi (up to tol)?
bool in_order_interval(const Matrix& lo, const Matrix& h, const Matrix& hi, double tol);

}  // namespace linalg
}  // namespace krein
