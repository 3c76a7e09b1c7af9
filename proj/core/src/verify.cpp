#include "krein/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <thread>

#include "krein/errors.hpp"
#include "krein/extension.hpp"
#include "krein/gspace.hpp"
#include "krein/model_family.hpp"
#include "krein/quasi_basis.hpp"
#include "krein/random.hpp"

namespace krein::verify {

namespace {

using random::Rng;

struct Tally {
  double worst = 0.0;
  int failures = 0;
  std::ostringstream notes;

  void residual(double value, double limit, const std::string& what) {
    worst = std::max(worst, value);
    if (!(value <= limit)) {
      if (failures < 3) notes << what << " = " << value << " > " << limit << "; ";
      ++failures;
    }
  }
  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (failures < 3) notes << what << "; ";
      ++failures;
    }
  }
};

using CheckFn = std::function<void(Rng&, const Tolerances&, Tally&)>;

struct Check {
  const char* module;
  const char* name;
  CheckFn fn;
};

Index draw_dim(Rng& rng, Index lo, Index hi) {
  return std::uniform_int_distribution<Index>(lo, hi)(rng);
}

double extension_defect(const PartialContraction& t0, const Matrix& t) {
  return linalg::op_norm(t * t0.domain() - t0.action());
}

void check_fundamental_symmetry(Rng& rng, const Tolerances& tol, Tally& t) {
  for (int s = 0; s < 20; ++s) {
    const SignatureSpace sp = random::signature_space(draw_dim(rng, 2, 8), rng, s % 2 == 0);
    const Matrix id = linalg::identity(sp.dim());
    t.residual(linalg::op_norm(sp.J() * sp.J() - id), tol.structural, "J^2 - I");
    t.residual(linalg::op_norm(sp.P_plus() + sp.P_minus() - id), tol.structural, "P+ + P- - I");
    t.residual(linalg::op_norm(sp.P_plus() * sp.P_minus()), tol.structural, "P+ P-");
    const SubspaceClass cp = classify_subspace(sp, Subspace::span(sp.basis_plus()), tol);
    const SubspaceClass cm = classify_subspace(sp, Subspace::span(sp.basis_minus()), tol);
    t.require(cp.kind == SubspaceSign::positive, "H+ not positive");
    t.require(cm.kind == SubspaceSign::negative, "H- not negative");
    const Vector f = random::gaussian(sp.dim(), 1, rng).col(0);
    const Vector g = random::gaussian(sp.dim(), 1, rng).col(0);
    t.residual(std::abs(indefinite_product(sp, f, g) - std::conj(indefinite_product(sp, g, f))),
               tol.structural, "[f,g] - conj[g,f]");
  }
}

void check_angular_roundtrip(Rng& rng, const Tolerances& tol, Tally& t) {
  for (int s = 0; s < 30; ++s) {
    const PartialContraction t0 = random::partial_contraction(draw_dim(rng, 2, 8), rng, s % 2);
    const auto [lp, lm] = reconstruct_subspaces(t0);
    if (!lp.empty())
      t.require(classify_subspace(t0.space(), lp, tol).kind == SubspaceSign::positive,
                "L+ not positive");
    if (!lm.empty())
      t.require(classify_subspace(t0.space(), lm, tol).kind == SubspaceSign::negative,
                "L- not negative");
    const PartialContraction back = extract_angular(t0.space(), lp, lm, tol);
    t.residual(linalg::subspace_distance(back.domain(), t0.domain()), 1e-9, "domain roundtrip");
    t.residual(linalg::op_norm(back.action() * back.domain().adjoint() -
                               t0.action() * t0.domain().adjoint()),
               1e-9, "action roundtrip");
    t.require(duality_test(t0, tol), "duality of an anticommuting restriction");
    if (t0.domain().cols() > 0) {
      c0_operator(t0, tol);
      const PartialOperator g0 = cayley_g0(t0, tol);
      // G0 (I + T0) x = (I - T0) x on the domain.
      const Matrix lhs = g0.action * (g0.domain.adjoint() * (t0.domain() + t0.action()));
      t.residual(linalg::op_norm(lhs - (t0.domain() - t0.action())), 1e-9, "G0 (I+T0) = I-T0");
    }
  }
  // A non-symmetric anticommuting operator fails the duality test.
  const SignatureSpace sp = SignatureSpace::diagonal({1, -1});
  Matrix a(2, 2);
  a << 0.0, 0.25, 0.5, 0.0;
  const PartialContraction bad = PartialContraction::make(sp, linalg::identity(2), a, tol);
  t.require(!duality_test(bad, tol), "non-symmetric T0 passed duality");
}

void check_interval_validity(Rng& rng, const Tolerances& tol, Tally& t) {
  for (int s = 0; s < 30; ++s) {
    const PartialContraction t0 = random::partial_contraction(draw_dim(rng, 2, 8), rng, s % 2);
    const ExtensionInterval iv = krein_interval(t0, tol);
    const Matrix& j = t0.space().J();
    t.residual(linalg::op_norm(j * iv.T_mu + iv.T_M * j), tol.structural, "J T_mu + T_M J");
    t.residual(extension_defect(t0, iv.T_mu), 1e-9, "T_mu extends T0");
    t.residual(extension_defect(t0, iv.T_M), 1e-9, "T_M extends T0");
    t.residual(linalg::op_norm(iv.T_M) - 1.0, 1e-9, "||T_M|| <= 1");
    t.residual(linalg::op_norm(iv.T_mu) - 1.0, 1e-9, "||T_mu|| <= 1");
    t.residual(linalg::op_norm(j * iv.defect - iv.defect * iv.J_defect()), 1e-9,
               "defect reduces J");
    for (int k = 0; k < 5; ++k) {
      const Matrix x = random::unit_interval_operator(iv.defect_dim(), rng);
      const ExtensionChoice c = extension_from_x(iv, x, tol);
      t.require(linalg::in_order_interval(iv.T_mu, c.T, iv.T_M, 1e-10), "T_mu <= T <= T_M");
      t.residual(extension_defect(t0, c.T), 1e-9, "T(X) extends T0");
    }
  }
}

void check_anticommutation_equivalence(Rng& rng, const Tolerances& tol, Tally& t) {
  for (int s = 0; s < 20; ++s) {
    const PartialContraction t0 = random::partial_contraction(draw_dim(rng, 2, 6), rng, s % 2);
    const ExtensionInterval iv = krein_interval(t0, tol);
    for (int k = 0; k < 40; ++k) {
      const Matrix x = k % 2 ? random_x_solution(iv, rng)
                             : random::unit_interval_operator(iv.defect_dim(), rng);
      const ExtensionChoice c = extension_from_x(iv, x, tol);
      t.require(c.anticommuting == c.solves_x_equation, "JT=-TJ disagrees with X-equation");
      if (k % 2) t.require(c.solves_x_equation, "sampled solution fails the X-equation");
    }
  }
}

void check_affine_closure(Rng& rng, const Tolerances& tol, Tally& t) {
  int with_projection = 0;
  for (int s = 0; s < 40 || with_projection == 0; ++s) {
    const PartialContraction t0 = random::partial_contraction(draw_dim(rng, 2, 8), rng, s % 2);
    const ExtensionInterval iv = krein_interval(t0, tol);
    if (iv.defect_dim() == 0) continue;
    const XSolutionFamily fam = solve_x_equation(iv, rng());
    t.residual(x_equation_residual(iv, fam.x_half), tol.structural, "X = I/2");
    t.require(fam.projection.has_value() == (iv.p == iv.q), "projection iff p = q");
    t.require(fam.unique == (iv.p == 0 || iv.q == 0), "uniqueness iff J definite on M");
    if (!fam.projection) continue;
    ++with_projection;
    for (double a : {0.0, 0.2, 0.5, 0.9, 1.0}) {
      const Matrix x = fam.affine(a);
      t.residual(x_equation_residual(iv, x), tol.structural, "affine solution");
      const RealVector ev = linalg::eigenvalues(x);
      t.require(ev.minCoeff() > -1e-12 && ev.maxCoeff() < 1 + 1e-12, "0 <= X <= I");
    }
    const Matrix& p = *fam.projection;
    t.residual(linalg::op_norm(p * p - p), tol.structural, "projection solution");
  }
}

void check_extremality_agreement(Rng& rng, const Tolerances& tol, Tally& t) {
  int compared = 0;
  for (int s = 0; s < 60; ++s) {
    const PartialContraction t0 = random::partial_contraction(draw_dim(rng, 2, 6), rng, s % 2);
    const ExtensionInterval iv = krein_interval(t0, tol);
    std::vector<Matrix> xs = {random::unit_interval_operator(iv.defect_dim(), rng),
                              0.5 * linalg::identity(iv.defect_dim())};
    if (iv.p == iv.q && iv.p > 0) xs.push_back(*solve_x_equation(iv, rng()).projection);
    if (iv.defect_dim() > 0) {
      const Matrix basis = random::unitary(iv.defect_dim(), rng);
      const Index r = draw_dim(rng, 0, iv.defect_dim());
      xs.push_back(linalg::projector(basis.leftCols(r)));
    }
    for (const Matrix& x : xs) {
      const ExtensionChoice c = extension_from_x(iv, x, tol);
      const ExtremalityReport r = extremality_test(t0, c, tol);
      t.require(r.xi_rank_criterion == r.projection_criterion, "Xi-rank vs projection");
      t.require(density_test(t0, c.T, tol) == r.xi_rank_criterion, "density vs Xi-rank");
      if (r.cayley_defined) {
        ++compared;
        t.require(r.criteria_agree, "Cayley rank vs projection");
      }
    }
  }
  t.require(compared > 0, "no Cayley-defined sample");
  t.worst = compared;
}

void check_cayley(Rng& rng, const Tolerances& tol, Tally& t) {
  for (int s = 0; s < 30; ++s) {
    const SignatureSpace sp = random::signature_space(draw_dim(rng, 2, 8), rng, s % 2);
    const Matrix tm = random::anticommuting_contraction(sp, 0.9, rng);
    const Matrix g = cayley(tm, tol);
    t.residual(linalg::op_norm(cayley_inv(g, tol) - tm), tol.structural, "Cayley roundtrip");
    t.residual(linalg::op_norm(sp.J() * g * sp.J() * g - linalg::identity(sp.dim())), 1e-9,
               "J G J = G^{-1}");
  }
  bool thrown = false;
  try {
    Matrix anti(2, 2);
    anti << 0, 1, 1, 0;
    cayley(anti, tol);
  } catch (const CayleyUndefined&) {
    thrown = true;
  }
  t.require(thrown, "Cayley of antidiag(1,1) did not fail");
}

void check_g_norm_agreement(Rng& rng, const Tolerances& tol, Tally& t) {
  for (int s = 0; s < 30; ++s) {
    const PartialContraction t0 = random::partial_contraction(draw_dim(rng, 2, 6), rng, s % 2);
    if (t0.domain().cols() == 0) continue;
    const ExtensionInterval iv = krein_interval(t0, tol);
    const Matrix t1 = extension_from_x(iv, random_x_solution(iv, rng), tol).T;
    const Matrix t2 = extension_from_x(iv, random_x_solution(iv, rng), tol).T;
    const Matrix id = linalg::identity(t0.space().dim());
    if (linalg::eigenvalues(id + t1).minCoeff() <= tol.cayley_rank_guard ||
        linalg::eigenvalues(id + t2).minCoeff() <= tol.cayley_rank_guard)
      continue;
    const Matrix g1 = cayley(t1, tol), g2 = cayley(t2, tol);
    const Vector x = t0.domain() * random::gaussian(t0.domain().cols(), 1, rng).col(0);
    const Vector f = (id + t1) * x;
    const double a = std::real(f.dot(g1 * f)), b = std::real(f.dot(g2 * f));
    t.residual(std::abs(a - b) / std::max(1.0, std::abs(a)), 1e-8, "(G1 f, f) - (G2 f, f)");
  }
}

void check_t_half(Rng&, const Tolerances& tol, Tally& t) {
  const SignatureSpace sp = SignatureSpace::diagonal({1, -1});
  Matrix d(2, 1), a(2, 1);
  d << 1, 0;
  a << 0, 0.5;
  const PartialContraction t0 = PartialContraction::make(sp, d, a, tol);
  const ExtensionInterval iv = krein_interval(t0, tol);
  Matrix mu(2, 2), big(2, 2);
  mu << 0, 0.5, 0.5, -0.75;
  big << 0, 0.5, 0.5, 0.75;
  t.residual(linalg::op_norm(iv.T_mu - mu), tol.structural, "T_mu");
  t.residual(linalg::op_norm(iv.T_M - big), tol.structural, "T_M");
  t.require(iv.p == 0 && iv.q == 1, "signature (0,1)");
  t.require(classify_case(iv, tol) == Case::C, "case C");
  const XSolutionFamily fam = solve_x_equation(iv);
  t.require(fam.unique && !fam.projection, "unique non-projection solution");
  const ExtensionChoice c = extension_from_x(iv, fam.x_half, tol);
  t.require(c.anticommuting && !c.extremal, "X = 1/2 anticommuting, not extremal");
  t.require(!extremality_test(t0, c, tol).extremal, "extremality_test");
  t.require(!density_test(t0, c.T, tol), "density_test");
}

void check_max_subspaces(Rng& rng, const Tolerances& tol, Tally& t) {
  for (int s = 0; s < 20; ++s) {
    const SignatureSpace sp = random::signature_space(draw_dim(rng, 2, 8), rng, s % 2);
    const Matrix tm = random::anticommuting_contraction(sp, 0.8, rng);
    const MaxSubspaces m = max_subspaces(sp, tm, tol);
    t.require(!m.plus_degenerate && !m.minus_degenerate, "degenerate at norm 0.8");
    t.residual(m.duality_residual, tol.structural, "[L+max, L-max]");
    t.require(m.plus.dim() == sp.dim_plus() && m.minus.dim() == sp.dim_minus(), "dimensions");
  }
  const SignatureSpace sp = SignatureSpace::diagonal({1, -1});
  Matrix anti(2, 2);
  anti << 0, 1, 1, 0;
  t.require(max_subspaces(sp, anti, tol).plus_degenerate, "norm-1 image not flagged");
}

void check_gspace(Rng& rng, const Tolerances& tol, Tally& t) {
  for (int s = 0; s < 20; ++s) {
    const SignatureSpace sp = random::signature_space(draw_dim(rng, 2, 8), rng, s % 2);
    const Matrix tm = random::anticommuting_contraction(sp, 0.85, rng);
    const GMetric m = GMetric::from_contraction(sp, tm, tol);
    const GAgreementReport r = agreement_residuals(m, 10, rng());
    t.residual(r.g_inner_residual, tol.structural, "(f,g)_G forms");
    t.residual(r.jg_residual, tol.structural, "[f,g]_G - [f,g]");
    t.residual(r.xi_norm_residual, tol.structural, "||f||_G - ||Xi x||");
    t.residual(r.involution_residual, 1e-9, "J_G^2 - I");
    t.residual(r.g_symmetry_residual, 1e-9, "G J_G symmetric");
  }
}

void check_model_invariants(Rng&, const Tolerances& tol, Tally& t) {
  for (Index n : {1, 2, 5, 17, 64})
    for (double delta : {0.6, 1.0, 1.25, 1.5})
      for (auto v : {model::Variant::both_constraints, model::Variant::chi_plus_zero}) {
        const model::SequenceModelSpec spec{delta, v, n, {}};
        const model::ModelInstance m = model::build_model(spec, tol);
        const Matrix& j = m.space.J();
        t.residual(linalg::op_norm(j * m.T + m.T * j), tol.structural, "JT + TJ");
        t.residual(std::abs(linalg::op_norm(m.T) - (1.0 - 1.0 / double(n))), 1e-12, "||T||");
        t.require(duality_test(m.T0, tol), "model duality");
        t.residual(linalg::op_norm(m.T * m.T0.domain() - m.T0.action()), tol.structural,
                   "T0 restriction");
      }
}

void check_model_classification(Rng&, const Tolerances&, Tally& t) {
  for (double delta : {0.6, 0.8, 1.0, 1.1, 1.25, 1.5}) {
    const Case both = model::classify_analytic({delta, model::Variant::both_constraints, 8, {}});
    const Case zero = model::classify_analytic({delta, model::Variant::chi_plus_zero, 8, {}});
    const bool low = delta <= 1.0;
    t.require(both == (low ? Case::A : Case::B), "both-constraints case");
    t.require(zero == (low ? Case::A : Case::C), "chi-plus-zero case");
    t.require(!low || both == zero, "variants agree on (1/2, 1]");
    const model::XiDiagnostic d =
        model::xi_preimage_diagnostic({delta, model::Variant::both_constraints, 8, {}});
    t.require(d.diverges == low, "divergence verdict");
    t.require(d.marginal == (delta == 1.0), "marginal flag");
  }
}

void check_model_numeric(Rng&, const Tolerances& tol, Tally& t) {
  for (double delta : {0.75, 1.0, 1.25})
    for (Index n : {8, 32, 96}) {
      const model::XiNumericCheck c =
          model::xi_preimage_numeric({delta, model::Variant::both_constraints, n, {}}, tol);
      t.residual(c.relative_error, 1e-10, "dense ||Xi^{-1} chi||^2 vs S_N");
      t.require(!c.truncated_density, "truncations are never dense");
    }
  for (auto v : {model::Variant::both_constraints, model::Variant::chi_plus_zero}) {
    const model::SequenceModelSpec spec{1.25, v, 24, {}};
    const model::ModelInstance m = model::build_model(spec, tol);
    const ExtensionInterval iv = krein_interval(m.T0, tol);
    const model::DefectPrediction p = model::defect_prediction(spec);
    t.require(iv.p == p.p && iv.q == p.q, "defect signature");
    t.residual(linalg::subspace_distance(iv.defect, p.vectors), 1e-8, "defect span");
    t.require(classify_case(iv, tol) == p.predicted_case, "truncated case");
  }
}

void check_shifted_hermite(Rng&, const Tolerances&, Tally& t) {
  const Index n_max = 12;
  const double a = 0.5;
  const qb::FunctionFamily fam = qb::shifted_family(a, n_max, qb::default_hermite_grid(n_max, a));
  const Matrix ig = qb::indefinite_gram(fam);
  const std::vector<int> sigma = qb::measured_signs(fam);
  Matrix expect = Matrix::Zero(n_max, n_max);
  for (Index n = 0; n < n_max; ++n) {
    expect(n, n) = double(sigma[std::size_t(n)]);
    t.require(sigma[std::size_t(n)] == (n % 2 ? -1 : 1), "sigma_n = (-1)^n");
    t.require(sigma[std::size_t(n)] == fam.parity[std::size_t(n)], "sigma_n = parity of g_n");
  }
  t.residual((ig - expect).cwiseAbs().maxCoeff(), 1e-8, "indefinite Gram");
  const Matrix gg = qb::g_gram_fourier(fam);
  t.residual((gg - linalg::identity(n_max)).cwiseAbs().maxCoeff(), 1e-6, "G-Gram");
  t.residual((gg - qb::plain_gram(fam.grid, fam.g)).cwiseAbs().maxCoeff(), 1e-6,
             "Fourier vs direct route");
  t.require(linalg::eigenvalues(linalg::hermitian_part(gg)).minCoeff() > 0.0, "JC positivity");
  t.residual(qb::eigen_residual(fam).residual.maxCoeff(), 1e-8, "eigen residual");
  const Matrix hg = qb::h_gram_in_g(fam);
  Matrix diag = Matrix::Zero(n_max, n_max);
  for (Index n = 0; n < n_max; ++n) diag(n, n) = 1.0 + 2.0 * double(n) + a * a;
  t.residual((hg - diag).cwiseAbs().maxCoeff(), 1e-6, "h_gram_in_g");
  t.residual((hg - hg.adjoint()).cwiseAbs().maxCoeff(), 1e-8, "h_gram Hermitian");
  t.residual(qb::biorthogonality_residual(fam), 1e-8, "biorthogonality");
}

void check_c_symmetry(Rng&, const Tolerances&, Tally& t) {
  for (double a : {0.0, 0.5}) {
    const qb::FunctionFamily fam = qb::shifted_family(a, 10, qb::default_hermite_grid(10, a));
    const Vector f = fam.f.col(1) + fam.f.col(2);
    const Vector cf = qb::c_action(fam, f);
    const Vector want = -fam.f.col(1) + fam.f.col(2);
    t.residual(qb::norm(fam.grid, Vector(cf - want)), 1e-8, "C(f1 + f2)");
    t.residual(qb::norm(fam.grid, Vector(qb::c_action(fam, cf) - f)), 1e-8, "C^2 = I");
    t.residual(qb::norm(fam.grid, Vector(qb::c_action_multiplier(fam, f) - cf)), 1e-8,
               "series vs multiplier");
  }
  const qb::FunctionFamily an = qb::anharmonic_family(
      4.0, qb::builtin_weight("rational"), 8, qb::default_anharmonic_grid(4.0, 8));
  const Vector f = an.f.col(0) + an.f.col(3);
  t.residual(qb::norm(an.grid, Vector(qb::c_action_multiplier(an, f) - qb::c_action(an, f))),
             1e-8, "anharmonic multiplier");
}

void check_anharmonic(Rng&, const Tolerances&, Tally& t) {
  const Index n_max = 8;
  for (const std::string& name : qb::builtin_weight_names()) {
    const qb::FunctionFamily fam = qb::anharmonic_family(
        4.0, qb::builtin_weight(name), n_max, qb::default_anharmonic_grid(4.0, n_max));
    const Matrix ig = qb::indefinite_gram(fam);
    Matrix expect = Matrix::Zero(n_max, n_max);
    for (Index n = 0; n < n_max; ++n) expect(n, n) = n % 2 ? -1.0 : 1.0;
    t.residual((ig - expect).cwiseAbs().maxCoeff(), 1e-6, name + " indefinite Gram");
    t.residual((qb::weighted_gram(fam) - linalg::identity(n_max)).cwiseAbs().maxCoeff(), 1e-12,
               name + " weighted Gram");
    t.residual(qb::eigen_residual(fam).residual(0), 1e-4, name + " eigen residual n = 0");
    t.residual(qb::biorthogonality_residual(fam), 1e-8, name + " biorthogonality");
    t.require(!fam.growth_warning, name + " growth bound");
  }
}

void check_expansion(Rng&, const Tolerances&, Tally& t) {
  const double a = 0.5;
  const qb::Grid grid = qb::default_hermite_grid(16, a);
  const std::vector<std::function<cplx(double)>> targets = {
      [](double x) { return cplx(std::exp(-x * x)); },
      [](double x) { return cplx(x * std::exp(-x * x)); },
      [](double x) { return cplx(std::exp(-0.5 * (x - 0.5) * (x - 0.5))); }};
  for (std::size_t k = 0; k < targets.size(); ++k) {
    Vector g(grid.nodes);
    for (Index i = 0; i < grid.nodes; ++i) g(i) = targets[k](grid.x(i));
    double prev = std::numeric_limits<double>::infinity();
    for (Index n : {4, 8, 16}) {
      const qb::Expansion e = qb::expansion(qb::shifted_family(a, n, grid), g);
      t.require(e.g_norm_error <= prev * (1 + 1e-12) + 1e-14, "G-norm error increased");
      prev = e.g_norm_error;
    }
  }
  const qb::FunctionFamily fam = qb::shifted_family(a, 8, grid);
  const qb::Expansion e = qb::expansion(fam, Vector(fam.f.col(5)));
  t.residual(e.g_norm_error, 1e-8, "f5 reconstruction");
  t.residual(std::abs(e.coefficients(5) - 1.0), 1e-8, "c5 = 1");
}

const std::vector<Check>& registry() {
  static const std::vector<Check> checks = {
      {"indefinite-core", "fundamental_symmetry", check_fundamental_symmetry},
      {"angular-rep", "angular_roundtrip", check_angular_roundtrip},
      {"extension-engine", "interval_validity", check_interval_validity},
      {"extension-engine", "anticommutation_equivalence", check_anticommutation_equivalence},
      {"extension-engine", "affine_closure", check_affine_closure},
      {"extension-engine", "extremality_agreement", check_extremality_agreement},
      {"extension-engine", "cayley", check_cayley},
      {"extension-engine", "g_norm_agreement", check_g_norm_agreement},
      {"extension-engine", "t_half_instance", check_t_half},
      {"extension-engine", "max_subspaces", check_max_subspaces},
      {"gspace", "agreement", check_gspace},
      {"model-family", "invariants", check_model_invariants},
      {"model-family", "classification", check_model_classification},
      {"model-family", "numeric_cross_check", check_model_numeric},
      {"quasi-basis", "shifted_hermite", check_shifted_hermite},
      {"quasi-basis", "c_symmetry", check_c_symmetry},
      {"quasi-basis", "anharmonic", check_anharmonic},
      {"quasi-basis", "expansion", check_expansion},
  };
  return checks;
}

}  // namespace

unsigned thread_budget(unsigned requested) {
  unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("KREIN_LAB_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap > 0) n = std::min(n, unsigned(cap));
  }
  return std::max(1u, n);
}

std::vector<std::string> check_names() {
  std::vector<std::string> out;
  for (const Check& c : registry()) out.push_back(std::string(c.module) + "/" + c.name);
  return out;
}

std::vector<CheckResult> run_verify(const Options& options) {
  const auto& checks = registry();
  std::vector<CheckResult> results(checks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < checks.size(); i = next++) {
      CheckResult& r = results[i];
      r.module = checks[i].module;
      r.name = checks[i].name;
      Rng rng(options.seed + 7919 * i);
      Tally tally;
      const auto start = std::chrono::steady_clock::now();
      try {
        checks[i].fn(rng, options.tol, tally);
        r.passed = tally.failures == 0;
        r.detail = tally.notes.str();
      } catch (const std::exception& e) {
        r.passed = false;
        r.detail = std::string("exception: ") + e.what();
      }
      r.value = tally.worst;
      r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
  };
  const unsigned n = std::min<unsigned>(thread_budget(options.threads), unsigned(checks.size()));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < n; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return results;
}

}  // namespace krein::verify
