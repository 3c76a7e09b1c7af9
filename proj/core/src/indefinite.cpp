#include "krein/indefinite.hpp"

#include <cmath>
#include <string>

#include "krein/errors.hpp"

namespace krein {

namespace {

bool is_diagonal(const Matrix& m) {
  for (Index c = 0; c < m.cols(); ++c)
    for (Index r = 0; r < m.rows(); ++r)
      if (r != c && m(r, c) != cplx(0.0)) return false;
  return true;
}

}  // namespace

SignatureSpace::SignatureSpace(const Matrix& j, const Tolerances& tol) {
  const Index n = j.rows();
  if (n == 0 || j.cols() != n) throw InvalidInput("J must be a nonempty square matrix");
  if (linalg::hermitian_defect(j) > tol.structural)
    throw InvalidInput("J is not self-adjoint");
  const Matrix id = linalg::identity(n);
  if (linalg::op_norm(j * j - id) > tol.structural) throw InvalidInput("J^2 != I");

  auto data = std::make_shared<Data>();
  data->j = linalg::hermitian_part(j);
  data->p_plus = 0.5 * (id + data->j);
  data->p_minus = 0.5 * (id - data->j);

  if (is_diagonal(j)) {
    std::vector<Index> plus, minus;
    for (Index i = 0; i < n; ++i) (j(i, i).real() > 0 ? plus : minus).push_back(i);
    data->basis_plus = Matrix::Zero(n, static_cast<Index>(plus.size()));
    data->basis_minus = Matrix::Zero(n, static_cast<Index>(minus.size()));
    for (std::size_t k = 0; k < plus.size(); ++k) data->basis_plus(plus[k], Index(k)) = 1.0;
    for (std::size_t k = 0; k < minus.size(); ++k) data->basis_minus(minus[k], Index(k)) = 1.0;
  } else {
    Eigen::SelfAdjointEigenSolver<Matrix> es(data->j);
    const RealVector& ev = es.eigenvalues();
    Index n_minus = 0;
    while (n_minus < n && ev(n_minus) < 0.0) ++n_minus;
    data->basis_minus = es.eigenvectors().leftCols(n_minus);
    data->basis_plus = es.eigenvectors().rightCols(n - n_minus);
  }
  if (data->basis_plus.cols() == 0 || data->basis_minus.cols() == 0)
    throw InvalidInput("J = ±I is not a non-trivial fundamental symmetry");
  data_ = std::move(data);
}

SignatureSpace SignatureSpace::diagonal(const std::vector<int>& signs) {
  Matrix j = Matrix::Zero(Index(signs.size()), Index(signs.size()));
  for (std::size_t i = 0; i < signs.size(); ++i) {
    if (signs[i] != 1 && signs[i] != -1) throw InvalidInput("signature entries must be ±1");
    j(Index(i), Index(i)) = double(signs[i]);
  }
  return SignatureSpace(j);
}

Subspace Subspace::span(const Matrix& vectors, double rel_cutoff) {
  return Subspace(linalg::orth(vectors, rel_cutoff));
}

Subspace Subspace::zero(Index ambient_dim) { return Subspace(Matrix(ambient_dim, 0)); }

cplx indefinite_product(const SignatureSpace& space, const Vector& f, const Vector& g) {
  if (f.size() != space.dim() || g.size() != space.dim())
    throw InvalidInput("indefinite_product: dimension mismatch");
  return g.dot(space.J() * f);
}

std::string_view to_string(SubspaceSign s) {
  switch (s) {
    case SubspaceSign::positive: return "positive";
    case SubspaceSign::negative: return "negative";
    case SubspaceSign::nonnegative: return "nonnegative";
    case SubspaceSign::nonpositive: return "nonpositive";
    case SubspaceSign::indefinite: return "indefinite";
  }
  return "indefinite";
}

SubspaceClass classify_subspace(const SignatureSpace& space, const Subspace& l,
                                const Tolerances& tol) {
  if (l.ambient_dim() != space.dim()) throw InvalidInput("classify_subspace: dimension mismatch");
  if (l.empty()) throw InvalidInput("classify_subspace: zero subspace");
  const Matrix& b = l.basis();
  SubspaceClass out;
  out.gram_eigenvalues = linalg::eigenvalues(b.adjoint() * space.J() * b);
  const double lo = out.gram_eigenvalues.minCoeff();
  const double hi = out.gram_eigenvalues.maxCoeff();
  const double band = tol.neutral_margin;
  out.numerically_neutral = out.gram_eigenvalues.cwiseAbs().minCoeff() <= band;

  if (lo > band) {
    out.kind = SubspaceSign::positive;
    out.uniform_margin = lo;
  } else if (hi < -band) {
    out.kind = SubspaceSign::negative;
    out.uniform_margin = -hi;
  } else if (lo >= -band) {
    out.kind = SubspaceSign::nonnegative;
  } else if (hi <= band) {
    out.kind = SubspaceSign::nonpositive;
  } else {
    out.kind = SubspaceSign::indefinite;
  }
  return out;
}

FundamentalProjections fundamental_projections(const SignatureSpace& space) {
  return {space.P_plus(), space.P_minus()};
}

}  // namespace krein
