#include "krein/random.hpp"

#include <algorithm>
#include <cmath>

namespace krein::random {

Matrix gaussian(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Matrix m(rows, cols);
  for (Index c = 0; c < cols; ++c)
    for (Index r = 0; r < rows; ++r) m(r, c) = cplx(nd(rng), nd(rng)) / std::sqrt(2.0);
  return m;
}

Matrix unitary(Index n, Rng& rng) {
  if (n == 0) return Matrix(0, 0);
  Eigen::HouseholderQR<Matrix> qr(gaussian(n, n, rng));
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < n; ++i) {
    const cplx d = r(i, i);
    if (std::abs(d) > 0.0) q.col(i) *= d / std::abs(d);
  }
  return q;
}

SignatureSpace signature_space(Index n, Rng& rng, bool diagonal) {
  std::uniform_int_distribution<Index> pick(1, n - 1);
  const Index n_plus = pick(rng);
  std::vector<int> signs(static_cast<std::size_t>(n), -1);
  for (Index i = 0; i < n_plus; ++i) signs[static_cast<std::size_t>(i)] = 1;
  std::shuffle(signs.begin(), signs.end(), rng);
  if (diagonal) return SignatureSpace::diagonal(signs);
  RealVector s(n);
  for (Index i = 0; i < n; ++i) s(i) = signs[static_cast<std::size_t>(i)];
  const Matrix u = unitary(n, rng);
  return SignatureSpace(u * s.cast<cplx>().asDiagonal() * u.adjoint());
}

Matrix anticommuting_contraction(const SignatureSpace& space, double max_norm, Rng& rng) {
  const Matrix k = gaussian(space.dim_minus(), space.dim_plus(), rng);
  const double kn = linalg::op_norm(k);
  const Matrix kk = kn > 0.0 ? Matrix(k * (max_norm / kn)) : k;
  const Matrix& bp = space.basis_plus();
  const Matrix& bm = space.basis_minus();
  // H+ -> H- via K, H- -> H+ via K*.
  const Matrix t = bm * kk * bp.adjoint() + bp * kk.adjoint() * bm.adjoint();
  return linalg::hermitian_part(t);
}

Matrix j_invariant_domain(const SignatureSpace& space, Rng& rng) {
  std::uniform_int_distribution<Index> kp(0, space.dim_plus());
  std::uniform_int_distribution<Index> km(0, space.dim_minus());
  const Index a = kp(rng);
  const Index b = km(rng);
  const Matrix mp = space.basis_plus() * unitary(space.dim_plus(), rng).leftCols(a);
  const Matrix mm = space.basis_minus() * unitary(space.dim_minus(), rng).leftCols(b);
  Matrix d(space.dim(), a + b);
  d << mp, mm;
  return d;
}

PartialContraction partial_contraction(Index n, Rng& rng, bool diagonal_j) {
  const SignatureSpace space = signature_space(n, rng, diagonal_j);
  std::uniform_real_distribution<double> norm(0.3, 0.9);
  const Matrix t = anticommuting_contraction(space, norm(rng), rng);
  const Matrix d = j_invariant_domain(space, rng);
  return PartialContraction::make(space, d, t * d);
}

Matrix unit_interval_operator(Index m, Rng& rng) {
  if (m == 0) return Matrix(0, 0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RealVector ev(m);
  for (Index i = 0; i < m; ++i) ev(i) = u(rng);
  const Matrix v = unitary(m, rng);
  return linalg::hermitian_part(v * ev.cast<cplx>().asDiagonal() * v.adjoint());
}

}  // namespace krein::random
