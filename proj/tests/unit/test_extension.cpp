#include <gtest/gtest.h>

#include <numbers>

#include "krein/errors.hpp"
#include "krein/extension.hpp"
#include "krein/random.hpp"
#include "oracles.hpp"

using namespace krein;

namespace {

Matrix m2(cplx a, cplx b, cplx c, cplx d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

SignatureSpace diag2() { return SignatureSpace::diagonal({1, -1}); }

// t = 1/2 instance: J = diag(1, -1), D = span{e1}, T0 e1 = e2 / 2.
PartialContraction t_half() {
  Vector d(2), a(2);
  d << 1.0, 0.0;
  a << 0.0, 0.5;
  return PartialContraction::make(diag2(), d, a);
}

PartialContraction empty_domain() {
  return PartialContraction::make(diag2(), Matrix(2, 0), Matrix(2, 0));
}

PartialContraction full_domain(const Matrix& t) {
  return PartialContraction::make(diag2(), Matrix::Identity(2, 2), t);
}

double dist(const Matrix& a, const Matrix& b) { return oracle::opnorm(a - b); }

}  // namespace

TEST(AnyExtension, FullDomainIsT0) {
  const Matrix t = m2(0, 0.3, 0.3, 0);
  EXPECT_LT(dist(any_sa_extension(full_domain(t)), t), 1e-14);
}

TEST(AnyExtension, THalfMidpoint) {
  const Matrix t = any_sa_extension(t_half());
  EXPECT_LT(dist(t, m2(0, 0.5, 0.5, 0)), 1e-14);
  const auto [lo, hi] = oracle::scan_two_by_two(0.5, 4000);
  EXPECT_NEAR(lo, -0.75, 1e-3);
  EXPECT_NEAR(hi, 0.75, 1e-3);
  EXPECT_NEAR(std::real(t(1, 1)), 0.5 * (lo + hi), 1e-3);
}

TEST(AnyExtension, EmptyDomainIsZero) {
  EXPECT_LT(oracle::opnorm(any_sa_extension(empty_domain())), 1e-15);
}

TEST(AnyExtension, RandomInstancesExtendAndContract) {
  random::Rng rng(1);
  for (int trial = 0; trial < 30; ++trial) {
    const PartialContraction t0 = random::partial_contraction(2 + trial % 6, rng);
    const Matrix t = any_sa_extension(t0);
    EXPECT_LT(dist(t, t.adjoint()), 1e-12);
    EXPECT_LE(oracle::opnorm(t), 1.0 + 1e-10);
    EXPECT_LT(oracle::opnorm(t * t0.domain() - t0.action()), 1e-10);
  }
}

TEST(JSymmetrize, AnticommutingIsFixed) {
  const Matrix t = m2(0, 0.4, 0.4, 0);
  EXPECT_LT(dist(j_symmetrize(diag2(), t), t), 1e-15);
}

TEST(JSymmetrize, DropsDiagonalBlock) {
  for (double c : {-0.7, 0.0, 0.3})
    EXPECT_LT(dist(j_symmetrize(diag2(), m2(0, 0.5, 0.5, c)), m2(0, 0.5, 0.5, 0)), 1e-15);
}

TEST(JSymmetrize, JGoesToZero) {
  EXPECT_LT(oracle::opnorm(j_symmetrize(diag2(), diag2().J())), 1e-15);
}

TEST(KreinInterval, EmptyDomain) {
  const ExtensionInterval iv = krein_interval(empty_domain());
  EXPECT_LT(dist(iv.T_mu, -Matrix::Identity(2, 2)), 1e-12);
  EXPECT_LT(dist(iv.T_M, Matrix::Identity(2, 2)), 1e-12);
  EXPECT_EQ(iv.p, 1);
  EXPECT_EQ(iv.q, 1);
}

TEST(KreinInterval, THalf) {
  const ExtensionInterval iv = krein_interval(t_half());
  EXPECT_LT(dist(iv.T_mu, m2(0, 0.5, 0.5, -0.75)), 1e-12);
  EXPECT_LT(dist(iv.T_M, m2(0, 0.5, 0.5, 0.75)), 1e-12);
  EXPECT_EQ(iv.p, 0);
  EXPECT_EQ(iv.q, 1);
  ASSERT_EQ(iv.defect_dim(), 1);
  EXPECT_NEAR(std::abs(iv.defect(1, 0)), 1.0, 1e-12);
  // Minimality / maximality along the defect direction by bisection.
  Vector e2 = Vector::Zero(2);
  e2(1) = 1.0;
  EXPECT_NEAR(oracle::headroom(iv.T_M, e2, 1.0), 0.0, 1e-9);
  EXPECT_NEAR(oracle::headroom(iv.T_mu, e2, -1.0), 0.0, 1e-9);
}

TEST(KreinInterval, FullDomain) {
  const Matrix t = m2(0, 0.3, 0.3, 0);
  const ExtensionInterval iv = krein_interval(full_domain(t));
  EXPECT_LT(dist(iv.T_mu, t), 1e-12);
  EXPECT_LT(dist(iv.T_M, t), 1e-12);
  EXPECT_EQ(iv.defect_dim(), 0);
}

TEST(KreinInterval, MatchesSchurOracle) {
  random::Rng rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const PartialContraction t0 = random::partial_contraction(2 + trial % 5, rng);
    const ExtensionInterval iv = krein_interval(t0);
    const oracle::Interval ref = oracle::schur_interval(t0.domain(), t0.action());
    EXPECT_LT(dist(iv.T_mu, ref.lo), 1e-8);
    EXPECT_LT(dist(iv.T_M, ref.hi), 1e-8);
    const Matrix& j = t0.space().J();
    EXPECT_LT(oracle::opnorm(j * iv.T_mu + iv.T_M * j), 1e-10);
  }
}

TEST(SolveX, SignatureOneOneHasProjections) {
  const ExtensionInterval iv = krein_interval(empty_domain());
  const XSolutionFamily fam = solve_x_equation(iv, 9u);
  ASSERT_TRUE(fam.projection.has_value());
  EXPECT_FALSE(fam.unique);
  const Matrix& x = *fam.projection;
  // Closed form: [[1/2, e^{i theta}/2], [e^{-i theta}/2, 1/2]] in the adapted basis.
  EXPECT_NEAR(std::real(x(0, 0)), 0.5, 1e-12);
  EXPECT_NEAR(std::real(x(1, 1)), 0.5, 1e-12);
  EXPECT_NEAR(std::abs(x(0, 1)), 0.5, 1e-12);
  EXPECT_LT(dist(x * x, x), 1e-12);
  EXPECT_LT(x_equation_residual(iv, x), 1e-12);
  // Different seeds give different phases.
  const XSolutionFamily other = solve_x_equation(iv, 10u);
  EXPECT_GT(dist(*other.projection, x), 1e-6);
}

TEST(SolveX, BruteForceOverDiscretizedContractions) {
  // Every Hermitian 0 <= X <= I on a grid that solves X = J(I - X)J has
  // a = d = 1/2; the projections among them have |b| = 1/2.
  const Matrix j = diag2().J();
  int solutions = 0, projections = 0;
  const int steps = 8;
  for (int ia = 0; ia <= steps; ++ia)
    for (int id = 0; id <= steps; ++id)
      for (int ir = 0; ir <= steps; ++ir)
        for (int ith = 0; ith < 8; ++ith) {
          const double a = double(ia) / steps, d = double(id) / steps;
          const cplx b = std::polar(0.5 * double(ir) / steps, std::numbers::pi * ith / 4.0);
          const Matrix x = m2(a, b, std::conj(b), d);
          const Eigen::VectorXd ev = oracle::eig(x);
          if (ev.minCoeff() < -1e-12 || ev.maxCoeff() > 1.0 + 1e-12) continue;
          if (oracle::opnorm(x - j * (Matrix::Identity(2, 2) - x) * j) > 1e-12) continue;
          ++solutions;
          EXPECT_DOUBLE_EQ(a, 0.5);
          EXPECT_DOUBLE_EQ(d, 0.5);
          if (oracle::opnorm(x * x - x) < 1e-12) {
            ++projections;
            EXPECT_NEAR(std::abs(b), 0.5, 1e-12);
          }
        }
  EXPECT_GT(solutions, 0);
  EXPECT_EQ(projections, 8);
}

TEST(SolveX, NegativeLineIsUnique) {
  const ExtensionInterval iv = krein_interval(t_half());
  const XSolutionFamily fam = solve_x_equation(iv);
  EXPECT_TRUE(fam.unique);
  EXPECT_FALSE(fam.projection.has_value());
  EXPECT_NEAR(std::abs(fam.x_half(0, 0) - 0.5), 0.0, 1e-15);
}

TEST(SolveX, HalfAlwaysSolves) {
  random::Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const ExtensionInterval iv = krein_interval(random::partial_contraction(2 + trial % 5, rng));
    const XSolutionFamily fam = solve_x_equation(iv);
    EXPECT_LT(x_equation_residual(iv, fam.x_half), 1e-12);
    EXPECT_EQ(fam.unique, iv.p == 0 || iv.q == 0);
    EXPECT_EQ(fam.projection.has_value(), iv.p == iv.q && iv.p > 0);
  }
}

TEST(ExtensionFromX, Endpoints) {
  const ExtensionInterval iv = krein_interval(t_half());
  const Index m = iv.defect_dim();
  EXPECT_LT(dist(extension_from_x(iv, Matrix::Zero(m, m)).T, iv.T_mu), 1e-12);
  EXPECT_LT(dist(extension_from_x(iv, Matrix::Identity(m, m)).T, iv.T_M), 1e-12);
  const ExtensionChoice mid = extension_from_x(iv, 0.5 * Matrix::Identity(m, m));
  EXPECT_LT(dist(mid.T, 0.5 * (iv.T_mu + iv.T_M)), 1e-12);
  EXPECT_TRUE(mid.anticommuting);
  EXPECT_TRUE(mid.solves_x_equation);
}

TEST(ExtensionFromX, RejectsOutOfRange) {
  const ExtensionInterval iv = krein_interval(t_half());
  EXPECT_THROW(extension_from_x(iv, 2.0 * Matrix::Identity(1, 1)), InvalidInput);
  EXPECT_THROW(extension_from_x(iv, Matrix::Identity(2, 2)), InvalidInput);
}

TEST(Extremality, HalfOnTHalfIsNotExtremal) {
  const PartialContraction t0 = t_half();
  const ExtensionInterval iv = krein_interval(t0);
  const ExtremalityReport r = extremality_test(t0, extension_from_x(iv, 0.5 * Matrix::Identity(1, 1)));
  EXPECT_FALSE(r.projection_criterion);
  EXPECT_FALSE(r.xi_rank_criterion);
  EXPECT_FALSE(r.extremal);
  EXPECT_TRUE(r.criteria_agree);
}

TEST(Extremality, ProjectionSolutionIsExtremal) {
  const PartialContraction t0 = empty_domain();
  const ExtensionInterval iv = krein_interval(t0);
  const ExtensionChoice c = extension_from_x(iv, *solve_x_equation(iv, 3u).projection);
  const ExtremalityReport r = extremality_test(t0, c);
  EXPECT_TRUE(r.projection_criterion);
  EXPECT_TRUE(r.xi_rank_criterion);
  EXPECT_TRUE(r.extremal);
  EXPECT_TRUE(r.criteria_agree);
}

TEST(Extremality, TrivialDefectIsExtremal) {
  const PartialContraction t0 = full_domain(m2(0, 0.3, 0.3, 0));
  const ExtensionInterval iv = krein_interval(t0);
  const ExtremalityReport r = extremality_test(t0, extension_from_x(iv, Matrix(0, 0)));
  EXPECT_TRUE(r.extremal);
}

TEST(ClassifyCase, Examples) {
  EXPECT_EQ(classify_case(krein_interval(full_domain(m2(0, 0.3, 0.3, 0)))), Case::A);
  EXPECT_EQ(classify_case(krein_interval(empty_domain())), Case::B);
  EXPECT_EQ(classify_case(krein_interval(t_half())), Case::C);
  EXPECT_EQ(to_string(Case::B), "B");
}

TEST(MaxSubspaces, ZeroGivesFundamental) {
  const MaxSubspaces s = max_subspaces(diag2(), Matrix::Zero(2, 2));
  EXPECT_NEAR(std::abs(s.plus.basis()(0, 0)), 1.0, 1e-14);
  EXPECT_NEAR(std::abs(s.minus.basis()(1, 0)), 1.0, 1e-14);
  EXPECT_FALSE(s.plus_degenerate || s.minus_degenerate);
}

TEST(MaxSubspaces, HalfOffDiagonal) {
  const SignatureSpace s = diag2();
  const MaxSubspaces m = max_subspaces(s, m2(0, 0.5, 0.5, 0));
  Vector fp(2), fm(2);
  fp << 1.0, 0.5;
  fm << 0.5, 1.0;
  ASSERT_EQ(m.plus.dim(), 1);
  ASSERT_EQ(m.minus.dim(), 1);
  EXPECT_NEAR(std::abs(m.plus.basis().col(0).dot(fp.normalized())), 1.0, 1e-14);
  EXPECT_NEAR(std::abs(m.minus.basis().col(0).dot(fm.normalized())), 1.0, 1e-14);
  EXPECT_NEAR(std::abs(indefinite_product(s, fp, fm)), 0.0, 1e-15);
  EXPECT_LT(m.duality_residual, 1e-14);
}

TEST(MaxSubspaces, NormOneIsDegenerate) {
  const MaxSubspaces m = max_subspaces(diag2(), m2(0, 1, 1, 0));
  EXPECT_TRUE(m.plus_degenerate);
  EXPECT_GT(m.degenerate_directions.cols(), 0);
}

TEST(Density, FullDomainIsDense) {
  const PartialContraction t0 = full_domain(m2(0, 0.3, 0.3, 0));
  EXPECT_TRUE(density_test(t0, t0.action()));
  const PartialContraction zero = full_domain(Matrix::Zero(2, 2));
  EXPECT_TRUE(density_test(zero, Matrix::Zero(2, 2)));
}

TEST(Density, THalfIsNotDense) {
  EXPECT_FALSE(density_test(t_half(), m2(0, 0.5, 0.5, 0)));
}

TEST(Cayley, Examples) {
  EXPECT_LT(dist(cayley(Matrix::Zero(3, 3)), Matrix::Identity(3, 3)), 1e-15);
  const double t = 0.4;
  EXPECT_LT(dist(cayley(m2(t, 0, 0, -t)), m2((1 - t) / (1 + t), 0, 0, (1 + t) / (1 - t))), 1e-14);
  EXPECT_THROW(cayley(m2(0, 1, 1, 0)), CayleyUndefined);
}

TEST(Cayley, InverseRoundTrip) {
  random::Rng rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const SignatureSpace s = random::signature_space(5, rng);
    const Matrix t = random::anticommuting_contraction(s, 0.8, rng);
    EXPECT_LT(dist(cayley_inv(cayley(t)), t), 1e-12);
  }
}
