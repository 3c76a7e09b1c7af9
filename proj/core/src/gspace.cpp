#include "krein/gspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "krein/errors.hpp"
#include "krein/random.hpp"

namespace krein {

GMetric::GMetric(SignatureSpace space, Matrix g, Matrix t, const Tolerances& tol)
    : space_(std::move(space)), g_(std::move(g)), t_(std::move(t)), tol_(tol) {
  const Index n = space_.dim();
  const Matrix id = linalg::identity(n);
  xi_ = linalg::psd_sqrt(id - t_ * t_, tol.psd_clamp);
  // (I+T) J (I+T)^{-1} = ((I+T)^{-1} J (I+T))*.
  j_g_ = (id + t_).partialPivLu().solve(space_.J() * (id + t_)).adjoint();
  g_spectrum_ = linalg::eigenvalues(g_);
  const double gmax = std::max(1.0, g_spectrum_.size() ? g_spectrum_.maxCoeff() : 1.0);
  Eigen::SelfAdjointEigenSolver<Matrix> es(g_);
  std::vector<Index> null;
  for (Index i = 0; i < n; ++i)
    if (es.eigenvalues()(i) <= tol.psd_rank * gmax) null.push_back(i);
  kernel_.resize(n, Index(null.size()));
  for (std::size_t i = 0; i < null.size(); ++i) kernel_.col(Index(i)) = es.eigenvectors().col(null[i]);
  degenerate_ = !null.empty();
  anticommuting_ = linalg::op_norm(space_.J() * t_ + t_ * space_.J()) < tol.structural;
}

GMetric GMetric::from_contraction(const SignatureSpace& space, const Matrix& t,
                                  const Tolerances& tol) {
  if (t.rows() != space.dim() || t.cols() != space.dim())
    throw InvalidInput("GMetric: T has the wrong dimension");
  if (linalg::hermitian_defect(t) > tol.structural)
    throw InvalidInput("GMetric: T is not self-adjoint");
  if (linalg::op_norm(t) > 1.0 + tol.structural)
    throw InvalidInput("GMetric: T is not a contraction");
  const Matrix th = linalg::hermitian_part(t);
  return GMetric(space, cayley(th, tol), th, tol);
}

GMetric GMetric::from_operator(const SignatureSpace& space, const Matrix& g,
                               const Tolerances& tol) {
  if (g.rows() != space.dim() || g.cols() != space.dim())
    throw InvalidInput("GMetric: G has the wrong dimension");
  const double scale = std::max(1.0, linalg::op_norm(g));
  if (linalg::hermitian_defect(g) > tol.structural * scale)
    throw InvalidInput("GMetric: G is not self-adjoint");
  const Matrix gh = linalg::hermitian_part(g);
  if (linalg::eigenvalues(gh).minCoeff() < -tol.psd_rank * scale)
    throw InvalidInput("GMetric: G is not positive semidefinite");
  const Matrix id = linalg::identity(space.dim());
  const Matrix t = linalg::hermitian_part((id + gh).partialPivLu().solve(id - gh));
  return GMetric(space, gh, t, tol);
}

double GMetric::cond() const {
  if (degenerate_) return std::numeric_limits<double>::infinity();
  if (g_spectrum_.size() == 0) return 1.0;
  return g_spectrum_.maxCoeff() / g_spectrum_.minCoeff();
}

std::pair<Vector, Vector> max_decomposition(const GMetric& m, const Vector& f) {
  const Index n = m.space().dim();
  const Matrix id = linalg::identity(n);
  const Vector x = (id + m.T()).partialPivLu().solve(f);
  return {(id + m.T()) * (m.space().P_plus() * x), (id + m.T()) * (m.space().P_minus() * x)};
}

namespace {

void check_vector(const GMetric& m, const Vector& f, const char* who) {
  if (f.size() != m.space().dim()) throw InvalidInput(std::string(who) + ": dimension mismatch");
  if (m.degenerate() && m.kernel().cols() > 0) {
    const double along = (m.kernel().adjoint() * f).norm();
    if (along > 1e-10 * std::max(1.0, f.norm()))
      throw InvalidInput(std::string(who) + ": vector has a component along ker G");
  }
}

double pair_scale(const GMetric& m, const Vector& f, const Vector& g) {
  return std::max(1e-300, f.norm() * g.norm()) * std::max(1.0, linalg::op_norm(m.G()));
}

}  // namespace

cplx g_inner(const GMetric& m, const Vector& f, const Vector& g) {
  check_vector(m, f, "g_inner");
  check_vector(m, g, "g_inner");
  const cplx direct = g.dot(m.G() * f);
  if (m.anticommuting()) {
    const auto [fp, fm] = max_decomposition(m, f);
    const auto [gp, gm] = max_decomposition(m, g);
    const cplx split = indefinite_product(m.space(), fp, gp) - indefinite_product(m.space(), fm, gm);
    if (std::abs(direct - split) > m.tol_.structural * pair_scale(m, f, g))
      throw InvariantViolation("g_inner: matrix and decomposition forms disagree");
  }
  return direct;
}

cplx jg_product(const GMetric& m, const Vector& f, const Vector& g) {
  check_vector(m, f, "jg_product");
  check_vector(m, g, "jg_product");
  const cplx value = g.dot(m.G() * (m.J_G() * f));
  if (m.anticommuting()) {
    const cplx plain = indefinite_product(m.space(), f, g);
    if (std::abs(value - plain) > m.tol_.structural * pair_scale(m, f, g))
      throw InvariantViolation("jg_product: [f,g]_G differs from [f,g]");
  }
  return value;
}

double energetic_norm(const GMetric& m, const Vector& f) {
  if (f.size() != m.space().dim()) throw InvalidInput("energetic_norm: dimension mismatch");
  return std::sqrt(std::max(0.0, f.squaredNorm() + std::real(f.dot(m.G() * f))));
}

GAgreementReport agreement_residuals(const GMetric& m, int samples, std::uint64_t seed) {
  GAgreementReport r;
  r.cond_G = m.cond();
  const Index n = m.space().dim();
  const Matrix id = linalg::identity(n);
  r.involution_residual = linalg::op_norm(m.J_G() * m.J_G() - id);
  r.g_symmetry_residual = linalg::hermitian_defect(m.G() * m.J_G());

  random::Rng rng(seed);
  // Project random draws off ker G so the degenerate case stays admissible.
  const Matrix keep = id - linalg::projector(m.kernel());
  for (int s = 0; s < samples; ++s) {
    const Vector f = keep * random::gaussian(n, 1, rng).col(0);
    const Vector g = keep * random::gaussian(n, 1, rng).col(0);
    const double scale = pair_scale(m, f, g);
    const cplx direct = g.dot(m.G() * f);
    const auto [fp, fm] = max_decomposition(m, f);
    const auto [gp, gm] = max_decomposition(m, g);
    const cplx split =
        indefinite_product(m.space(), fp, gp) - indefinite_product(m.space(), fm, gm);
    r.g_inner_residual = std::max(r.g_inner_residual, std::abs(direct - split) / scale);
    const cplx jg = g.dot(m.G() * (m.J_G() * f));
    r.jg_residual =
        std::max(r.jg_residual, std::abs(jg - indefinite_product(m.space(), f, g)) / scale);

    const Vector x = random::gaussian(n, 1, rng).col(0);
    const Vector y = (id + m.T()) * x;
    const double gnorm = std::sqrt(std::max(0.0, std::real(y.dot(m.G() * y))));
    r.xi_norm_residual =
        std::max(r.xi_norm_residual, std::abs(gnorm - (m.Xi() * x).norm()) / x.norm());
  }
  return r;
}

}  // namespace krein
