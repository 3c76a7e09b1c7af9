#include "krein/angular.hpp"

#include <algorithm>
#include <cmath>

#include "krein/errors.hpp"

namespace krein {

namespace {

double scaled(double tol, double magnitude) { return tol * std::max(1.0, magnitude); }

// diag(I_{k+}, -I_{k-}) = D* J D for an adapted domain basis [M+ | M-].
RealVector domain_signs(Index k_plus, Index k_minus) {
  RealVector s(k_plus + k_minus);
  s.head(k_plus).setOnes();
  s.tail(k_minus).setConstant(-1.0);
  return s;
}

}  // namespace

PartialOperator PartialOperator::from_spanning(const Matrix& vectors, const Matrix& images,
                                               const Tolerances& tol) {
  if (vectors.rows() != images.rows() || vectors.cols() != images.cols())
    throw InvalidInput("partial operator: vectors and images must have the same shape");
  const Index n = vectors.rows();
  if (vectors.cols() == 0) return {Matrix(n, 0), Matrix(n, 0)};

  const linalg::Svd svd = linalg::svd(vectors);
  const RealVector& sv = svd.s;
  Index r = 0;
  while (r < sv.size() && sv(r) > tol.rank * sv(0)) ++r;
  if (r == 0) {
    if (images.norm() > scaled(tol.structural, 0.0))
      throw InvalidInput("partial operator: nonzero image of the zero vector");
    return {Matrix(n, 0), Matrix(n, 0)};
  }
  Matrix domain = svd.U.leftCols(r);
  // vectors = U_r S_r V_r*, so A U_r = images V_r S_r^{-1}.
  Matrix action = images * svd.V.leftCols(r) *
                  sv.head(r).cwiseInverse().cast<cplx>().asDiagonal();
  const Matrix coeff = domain.adjoint() * vectors;
  const double mismatch = (action * coeff - images).norm();
  if (mismatch > scaled(tol.structural, images.norm()) * 10.0)
    throw InvalidInput("partial operator: images are inconsistent with the vectors");
  return {std::move(domain), std::move(action)};
}

Vector PartialOperator::apply(const Vector& v, const Tolerances& tol) const {
  if (v.size() != ambient_dim()) throw InvalidInput("apply: dimension mismatch");
  const Vector coeff = domain.adjoint() * v;
  if ((v - domain * coeff).norm() > scaled(tol.structural, v.norm()))
    throw InvalidInput("apply: vector is outside the operator domain");
  return action * coeff;
}

PartialOperator PartialOperator::inverse(const Tolerances& tol) const {
  if (linalg::rank(action, tol.rank) < domain.cols())
    throw InvalidInput("inverse: operator is not injective");
  return from_spanning(action, domain, tol);
}

PartialContraction PartialContraction::make(const SignatureSpace& space,
                                            const Matrix& domain_vectors, const Matrix& images,
                                            const Tolerances& tol) {
  const Index n = space.dim();
  if (domain_vectors.rows() != n || images.rows() != n)
    throw InvalidInput("partial contraction: dimension mismatch with J");
  const PartialOperator op = PartialOperator::from_spanning(domain_vectors, images, tol);
  const Matrix& d0 = op.domain;

  const Matrix jd = space.J() * d0;
  if ((jd - d0 * (d0.adjoint() * jd)).norm() > scaled(tol.structural, 1.0) * std::sqrt(double(n)))
    throw InvalidInput("partial contraction: domain is not J-invariant");

  // For a J-invariant domain the singular values of P± D0 are 0 or 1.
  const Matrix m_plus = linalg::orth_abs(space.P_plus() * d0, 0.5);
  const Matrix m_minus = linalg::orth_abs(space.P_minus() * d0, 0.5);
  if (m_plus.cols() + m_minus.cols() != d0.cols())
    throw InvalidInput("partial contraction: domain does not split as M+ ⊕ M-");

  Matrix domain(n, d0.cols());
  domain << m_plus, m_minus;
  Matrix action = op.action * (d0.adjoint() * domain);

  const RealVector signs = domain_signs(m_plus.cols(), m_minus.cols());
  const Matrix anti = space.J() * action + action * signs.cast<cplx>().asDiagonal();
  if (anti.size() > 0 && linalg::op_norm(anti) > scaled(tol.structural, linalg::op_norm(action)))
    throw InvalidInput("partial contraction: T0 does not anticommute with J");

  const double norm = linalg::op_norm(action);
  if (norm > 1.0 - tol.strict_contraction + tol.unity_flag)
    throw InvalidInput("partial contraction: ||T0|| = " + std::to_string(norm) +
                       " is not a strong contraction");
  const bool at_unity = std::abs(norm - 1.0) <= tol.unity_flag;
  return PartialContraction(space, std::move(domain), std::move(action), m_plus.cols(), norm,
                            at_unity);
}

PartialContraction extract_angular(const SignatureSpace& space, const Subspace& l_plus,
                                   const Subspace& l_minus, const Tolerances& tol) {
  const Index n = space.dim();
  if (l_plus.ambient_dim() != n || l_minus.ambient_dim() != n)
    throw InvalidInput("extract_angular: dimension mismatch");
  if (!l_plus.empty()) {
    const auto cls = classify_subspace(space, l_plus, tol);
    if (cls.kind != SubspaceSign::positive) throw InvalidInput("extract_angular: L+ is not positive");
  }
  if (!l_minus.empty()) {
    const auto cls = classify_subspace(space, l_minus, tol);
    if (cls.kind != SubspaceSign::negative) throw InvalidInput("extract_angular: L- is not negative");
  }
  const Matrix& bp = l_plus.basis();
  const Matrix& bm = l_minus.basis();
  const Matrix xp = space.P_plus() * bp;
  const Matrix xm = space.P_minus() * bm;
  if (linalg::rank(xp, tol.rank) != bp.cols() || linalg::rank(xm, tol.rank) != bm.cols())
    throw NumericalRankFailure("extract_angular: P± restricted to L± is singular");

  Matrix vectors(n, bp.cols() + bm.cols());
  Matrix images(n, bp.cols() + bm.cols());
  vectors << xp, xm;
  images << space.P_minus() * bp, space.P_plus() * bm;
  return PartialContraction::make(space, vectors, images, tol);
}

std::pair<Subspace, Subspace> reconstruct_subspaces(const PartialContraction& t0) {
  return {Subspace::span(t0.m_plus() + t0.k_plus_minus()),
          Subspace::span(t0.m_minus() + t0.k_minus_plus())};
}

double duality_residual(const PartialContraction& t0) {
  return linalg::hermitian_defect(t0.domain().adjoint() * t0.action());
}

bool duality_test(const PartialContraction& t0, const Tolerances& tol) {
  return duality_residual(t0) <= tol.structural;
}

DefinitenessReport classify_norm(double norm, bool maximal, const Tolerances& tol) {
  DefinitenessReport r;
  r.norm = norm;
  r.uniformly_definite = norm < 1.0 - tol.unity_flag;
  r.definite_not_uniform = !r.uniformly_definite;
  r.approaching_non_uniform = r.uniformly_definite && (1.0 - norm) < tol.approaching_unity;
  r.maximal = maximal;
  return r;
}

DefinitenessReport definiteness_class(const PartialContraction& t0, const Tolerances& tol) {
  return classify_norm(t0.norm(), t0.full_domain() && duality_test(t0, tol), tol);
}

PartialOperator c0_operator(const PartialContraction& t0, const Tolerances& tol) {
  if (!duality_test(t0, tol)) throw InvalidInput("c0_operator: L+ and L- are not dual");
  const Matrix& d = t0.domain();
  const Vector signs = domain_signs(t0.dim_m_plus(), t0.dim_m_minus()).cast<cplx>();
  // C0 (I + T0) x = (I + T0) J x for x in D(T0).
  const Matrix vectors = d + t0.action();
  const Matrix images = t0.space().J() * d + t0.action() * signs.asDiagonal();
  PartialOperator c0 = PartialOperator::from_spanning(vectors, images, tol);

  if (c0.domain_dim() > 0) {
    Matrix twice(c0.ambient_dim(), c0.domain_dim());
    for (Index k = 0; k < c0.domain_dim(); ++k) twice.col(k) = c0.apply(c0.action.col(k), tol);
    if ((twice - c0.domain).norm() > scaled(tol.structural, 1.0) * 10.0)
      throw InvariantViolation("c0_operator: C0^2 != I on the domain");
    const Matrix gram = c0.domain.adjoint() * t0.space().J() * c0.action;
    if (linalg::hermitian_defect(gram) > scaled(tol.structural, linalg::op_norm(gram)) * 10.0)
      throw InvariantViolation("c0_operator: J C0 is not symmetric");
    if (linalg::eigenvalues(gram).minCoeff() < -tol.structural)
      throw InvariantViolation("c0_operator: J C0 is not positive");
  }
  return c0;
}

PartialOperator cayley_g0(const PartialContraction& t0, const Tolerances& tol) {
  const Matrix vectors = t0.domain() + t0.action();
  if (linalg::rank(vectors, tol.rank) < t0.domain().cols())
    throw CayleyUndefined("cayley_g0: I + T0 is not injective on D(T0)");
  return PartialOperator::from_spanning(vectors, t0.domain() - t0.action(), tol);
}

}  // namespace krein
