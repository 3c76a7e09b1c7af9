#include "krein/extension.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "krein/errors.hpp"
#include "krein/random.hpp"

namespace krein {

namespace {

double scaled(double tol, double magnitude) { return tol * std::max(1.0, magnitude); }

// (I - A^2)^{-1/2} on the range where I - A^2 is nonsingular, zero elsewhere.
Matrix inverse_sqrt_defect(const Matrix& a11, const Tolerances& tol) {
  const Index k = a11.rows();
  Eigen::SelfAdjointEigenSolver<Matrix> es(
      linalg::hermitian_part(linalg::identity(k) - a11 * a11));
  RealVector ev = es.eigenvalues();
  for (Index i = 0; i < k; ++i) ev(i) = ev(i) > tol.psd_rank ? 1.0 / std::sqrt(ev(i)) : 0.0;
  return es.eigenvectors() * ev.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

Matrix any_sa_extension(const PartialContraction& t0, const Tolerances& tol) {
  const Index n = t0.space().dim();
  const Index k = t0.domain().cols();
  if (k == 0) return Matrix::Zero(n, n);
  const Matrix& d = t0.domain();
  if (k == n) return linalg::hermitian_part(t0.action() * d.adjoint());

  // Block column [A11; B] of T0 in the basis D ⊕ D^⊥. With B = K (I - A11^2)^{1/2}
  // the completion X22 = -K A11 K* is the midpoint of the admissible interval.
  const Matrix dp = linalg::complement(d);
  const Matrix a11 = linalg::hermitian_part(d.adjoint() * t0.action());
  const Matrix b = dp.adjoint() * t0.action();
  const Matrix kmat = b * inverse_sqrt_defect(a11, tol);
  const Matrix x22 = -kmat * a11 * kmat.adjoint();

  Matrix u(n, n);
  u << d, dp;
  Matrix blk(n, n);
  blk << a11, b.adjoint(), b, x22;
  Matrix t = linalg::hermitian_part(u * blk * u.adjoint());
  if (linalg::op_norm(t) > 1.0 + 1e-9)
    throw InvariantViolation("any_sa_extension: completion is not contractive");
  return t;
}

Matrix j_symmetrize(const SignatureSpace& space, const Matrix& t_prime) {
  const Matrix& j = space.J();
  return linalg::hermitian_part(0.5 * (t_prime - j * t_prime * j));
}

Matrix ExtensionInterval::J_defect() const {
  RealVector s(p + q);
  s.head(p).setOnes();
  s.tail(q).setConstant(-1.0);
  return s.cast<cplx>().asDiagonal();
}

ExtensionInterval krein_interval(const PartialContraction& t0, const Tolerances& tol) {
  const SignatureSpace& space = t0.space();
  const Index n = space.dim();
  const Matrix id = linalg::identity(n);
  const Matrix& d = t0.domain();

  ExtensionInterval out{space, {}, {}, {}, {}, 0, 0, {}};
  out.T_base = j_symmetrize(space, any_sa_extension(t0, tol));
  const Matrix& t = out.T_base;

  const Matrix root_plus = linalg::psd_sqrt(id + t, tol.psd_clamp);
  const Matrix root_minus = linalg::psd_sqrt(id - t, tol.psd_clamp);
  const Matrix q1 = id - linalg::projector(linalg::orth(root_plus * d, tol.rank));
  const Matrix q2 = id - linalg::projector(linalg::orth(root_minus * d, tol.rank));
  out.T_mu = linalg::hermitian_part(t - root_plus * q1 * root_plus);
  out.T_M = linalg::hermitian_part(t + root_minus * q2 * root_minus);

  const Matrix s = linalg::hermitian_part(out.T_M - out.T_mu);
  const Matrix range = linalg::psd_range(s, tol.psd_rank);
  const Matrix e_plus = linalg::orth_abs(space.P_plus() * range, 0.5);
  const Matrix e_minus = linalg::orth_abs(space.P_minus() * range, 0.5);
  if (e_plus.cols() + e_minus.cols() != range.cols())
    throw InvariantViolation("krein_interval: defect space does not reduce J");
  out.p = e_plus.cols();
  out.q = e_minus.cols();
  out.defect.resize(n, out.p + out.q);
  out.defect << e_plus, e_minus;
  out.defect_root = linalg::psd_sqrt(s, tol.psd_clamp);
  return out;
}

Matrix XSolutionFamily::affine(double alpha) const {
  return affine_solution(projection ? *projection : x_half, alpha);
}

Matrix affine_solution(const Matrix& x0, double alpha) {
  const Matrix id = linalg::identity(x0.rows());
  return (1.0 - alpha) * x0 + alpha * (id - x0);
}

XSolutionFamily solve_x_equation(const ExtensionInterval& interval,
                                 std::optional<std::uint64_t> seed) {
  const Index m = interval.defect_dim();
  XSolutionFamily fam;
  fam.p = interval.p;
  fam.q = interval.q;
  fam.x_half = 0.5 * linalg::identity(m);
  fam.unique = fam.p == 0 || fam.q == 0;
  if (m == 0) {
    fam.description = "defect space is trivial: the extension is unique";
    return fam;
  }

  std::ostringstream desc;
  desc << "defect signature (" << fam.p << "," << fam.q << "); X = I/2 always solves. ";
  if (fam.p == fam.q) {
    Matrix w = linalg::identity(fam.p);
    if (seed) {
      random::Rng rng(*seed);
      w = random::unitary(fam.p, rng);
    }
    Matrix x(m, m);
    x << linalg::identity(fam.p), w.adjoint(), w, linalg::identity(fam.q);
    x *= 0.5;
    fam.projection = x;
    fam.complement = linalg::identity(m) - x;
    desc << "Projections onto the hypermaximal neutral subspaces {u + W u}, W unitary "
            "H+∩M -> H-∩M, solve the equation (infinitely many); the affine family "
            "(1-a)X0 + a(I-X0), a in [0,1], joins each to its complement.";
  } else if (fam.unique) {
    desc << "J is definite on M, so X = I/2 is the unique solution and no projection solves it.";
  } else {
    desc << "p != q: M has no hypermaximal neutral subspace and no projection solves it; "
            "solutions are I/2 + [[0,Z*],[Z,0]], ||Z|| <= 1/2.";
  }
  fam.description = desc.str();
  return fam;
}

double x_equation_residual(const ExtensionInterval& interval, const Matrix& x) {
  if (x.rows() != interval.defect_dim() || x.cols() != interval.defect_dim())
    throw InvalidInput("x_equation_residual: X must act on the defect space");
  if (x.size() == 0) return 0.0;
  const Matrix jm = interval.J_defect();
  return linalg::op_norm(x - jm * (linalg::identity(x.rows()) - x) * jm);
}

Matrix random_x_solution(const ExtensionInterval& interval, random::Rng& rng) {
  const Index p = interval.p;
  const Index q = interval.q;
  Matrix x = 0.5 * linalg::identity(p + q);
  if (p == 0 || q == 0) return x;
  Matrix z = random::gaussian(q, p, rng);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  z *= 0.5 * u(rng) / linalg::op_norm(z);
  x.bottomLeftCorner(q, p) = z;
  x.topRightCorner(p, q) = z.adjoint();
  return x;
}

ExtensionChoice extension_from_x(const ExtensionInterval& interval, const Matrix& x,
                                 const Tolerances& tol) {
  const Index m = interval.defect_dim();
  if (x.rows() != m || x.cols() != m)
    throw InvalidInput("extension_from_x: X must be a square matrix on the defect space");
  if (m > 0) {
    if (linalg::hermitian_defect(x) > tol.structural)
      throw InvalidInput("extension_from_x: X is not self-adjoint");
    const RealVector ev = linalg::eigenvalues(x);
    if (ev.minCoeff() < -tol.structural || ev.maxCoeff() > 1.0 + tol.structural)
      throw InvalidInput("extension_from_x: X is outside 0 <= X <= I");
  }
  ExtensionChoice c;
  c.X = x;
  const Matrix& root = interval.defect_root;
  const Matrix& e = interval.defect;
  c.T = linalg::hermitian_part(interval.T_mu + root * e * x * e.adjoint() * root);
  c.x_residual = x_equation_residual(interval, x);
  const Matrix& j = interval.space.J();
  c.anticommutation_residual = linalg::op_norm(j * c.T + c.T * j);
  c.solves_x_equation = c.x_residual < tol.structural;
  c.anticommuting = c.anticommutation_residual < tol.structural;
  c.extremal = m == 0 || linalg::op_norm(x * x - x) < tol.structural;
  return c;
}

ExtremalityReport extremality_test(const PartialContraction& t0, const ExtensionChoice& choice,
                                   const Tolerances& tol) {
  const Index n = t0.space().dim();
  const Matrix id = linalg::identity(n);
  const Matrix& t = choice.T;
  const Matrix& d = t0.domain();

  ExtremalityReport r;
  r.projection_criterion =
      choice.X.size() == 0 || linalg::op_norm(choice.X * choice.X - choice.X) < tol.structural;

  const Matrix xi2 = linalg::hermitian_part(id - t * t);
  r.xi_rank_criterion = linalg::psd_range(xi2, tol.psd_rank).cols() ==
                        linalg::psd_range(d.adjoint() * xi2 * d, tol.psd_rank).cols();

  const double lowest = linalg::eigenvalues(id + t).minCoeff();
  r.cayley_defined = lowest > tol.cayley_rank_guard;
  if (r.cayley_defined) {
    const Matrix g = cayley(t, tol);
    // ||G^{1/2}(I+T)x||^2 = x* (I+T) G (I+T) x.
    const Matrix gram = linalg::hermitian_part((id + t).adjoint() * g * (id + t));
    const bool crit = linalg::psd_range(gram, tol.cayley_psd_rank).cols() ==
                      linalg::psd_range(d.adjoint() * gram * d, tol.cayley_psd_rank).cols();
    r.cayley_rank_criterion = crit;
    r.extremal = crit;
    r.criteria_agree = crit == r.projection_criterion;
  } else {
    r.extremal = r.projection_criterion;
  }
  return r;
}

std::string_view to_string(Case c) {
  switch (c) {
    case Case::A: return "A";
    case Case::B: return "B";
    case Case::C: return "C";
  }
  return "?";
}

Case classify_case(const ExtensionInterval& interval, const Tolerances& tol) {
  if (linalg::op_norm(interval.T_M - interval.T_mu) < tol.structural) return Case::A;
  return interval.p == interval.q ? Case::B : Case::C;
}

MaxSubspaces max_subspaces(const SignatureSpace& space, const Matrix& t, const Tolerances& tol) {
  const Index n = space.dim();
  if (t.rows() != n || t.cols() != n) throw InvalidInput("max_subspaces: dimension mismatch");
  const Matrix id = linalg::identity(n);
  MaxSubspaces out{Subspace::span((id + t) * space.basis_plus(), tol.rank),
                   Subspace::span((id + t) * space.basis_minus(), tol.rank),
                   false, false, 0.0, Matrix(n, 0)};

  std::vector<Vector> degenerate;
  auto inspect = [&](const Subspace& l, Index expected) {
    bool bad = l.dim() < expected;
    if (!l.empty()) {
      Eigen::SelfAdjointEigenSolver<Matrix> es(
          linalg::hermitian_part(l.basis().adjoint() * space.J() * l.basis()));
      for (Index i = 0; i < l.dim(); ++i) {
        if (std::abs(es.eigenvalues()(i)) <= tol.neutral_margin) {
          bad = true;
          degenerate.push_back(l.basis() * es.eigenvectors().col(i));
        }
      }
    }
    return bad;
  };
  out.plus_degenerate = inspect(out.plus, space.dim_plus());
  out.minus_degenerate = inspect(out.minus, space.dim_minus());
  if (!out.plus.empty() && !out.minus.empty())
    out.duality_residual =
        (out.plus.basis().adjoint() * space.J() * out.minus.basis()).cwiseAbs().maxCoeff();
  if (!degenerate.empty()) {
    Matrix dirs(n, Index(degenerate.size()));
    for (std::size_t i = 0; i < degenerate.size(); ++i) dirs.col(Index(i)) = degenerate[i];
    out.degenerate_directions = linalg::orth(dirs, tol.rank);
  }
  return out;
}

bool density_test(const PartialContraction& t0, const Matrix& t, const Tolerances& tol) {
  const Index n = t0.space().dim();
  if (t.rows() != n || t.cols() != n) throw InvalidInput("density_test: dimension mismatch");
  const Matrix xi2 = linalg::hermitian_part(linalg::identity(n) - t * t);
  const Matrix range = linalg::psd_range(xi2, tol.psd_rank);
  return linalg::intersection_dim(range, t0.domain_complement(), tol.structural) == 0;
}

Matrix cayley(const Matrix& t, const Tolerances& tol) {
  const Index n = t.rows();
  if (t.cols() != n) throw InvalidInput("cayley: T must be square");
  const Matrix id = linalg::identity(n);
  if (n > 0 && linalg::eigenvalues(id + t).minCoeff() <= tol.cayley)
    throw CayleyUndefined("cayley: -1 is an eigenvalue of T");
  return linalg::hermitian_part((id + t).partialPivLu().solve(id - t));
}

Matrix cayley_inv(const Matrix& g, const Tolerances& tol) {
  const Index n = g.rows();
  if (g.cols() != n) throw InvalidInput("cayley_inv: G must be square");
  if (linalg::hermitian_defect(g) > scaled(tol.structural, linalg::op_norm(g)))
    throw InvalidInput("cayley_inv: G is not self-adjoint");
  if (n > 0 && linalg::eigenvalues(g).minCoeff() <= 0.0)
    throw InvalidInput("cayley_inv: G is not positive definite");
  const Matrix id = linalg::identity(n);
  return linalg::hermitian_part((id + g).partialPivLu().solve(id - g));
}

}  // namespace krein
