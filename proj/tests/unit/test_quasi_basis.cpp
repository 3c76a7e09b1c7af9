#include <gtest/gtest.h>

#include <numbers>

#include "krein/errors.hpp"
#include "krein/grid.hpp"
#include "krein/quasi_basis.hpp"
#include "oracles.hpp"

using namespace krein;
using namespace krein::qb;

namespace {

double max_offdiag(const Matrix& a, const Matrix& expect) {
  return (a - expect).cwiseAbs().maxCoeff();
}

Matrix sign_diag(Index n) {
  Matrix d = Matrix::Zero(n, n);
  for (Index k = 0; k < n; ++k) d(k, k) = k % 2 ? -1.0 : 1.0;
  return d;
}

Vector sampled(const Grid& grid, double (*fn)(double)) {
  Vector v(grid.nodes);
  for (Index i = 0; i < grid.nodes; ++i) v(i) = fn(grid.x(i));
  return v;
}

const FunctionFamily& shifted12() {
  static const FunctionFamily fam = shifted_family(0.5, 12, default_hermite_grid(12, 0.5));
  return fam;
}

const FunctionFamily& anharmonic8() {
  static const FunctionFamily fam =
      anharmonic_family(4.0, builtin_weight("rational"), 8, default_anharmonic_grid(4.0, 8));
  return fam;
}

}  // namespace

TEST(GridTest, MidpointNodesAndMirror) {
  const Grid g = Grid::symmetric(4.0, 16);
  EXPECT_DOUBLE_EQ(g.h, 0.5);
  EXPECT_DOUBLE_EQ(g.x(0), -3.75);
  for (Index i = 0; i < g.nodes; ++i) EXPECT_DOUBLE_EQ(g.x(g.mirror(i)), -g.x(i));
  EXPECT_THROW(Grid::symmetric(4.0, 12), InvalidInput);
  EXPECT_THROW(Grid::symmetric(-1.0, 16), InvalidInput);
}

TEST(GridTest, FourierOfGaussian) {
  // F[e^{-x^2/2}](xi) = e^{-xi^2/2} with the unitary convention.
  const Grid g = Grid::symmetric(20.0, 1024);
  const Vector f = sampled(g, [](double x) { return std::exp(-0.5 * x * x); });
  const Vector fh = fourier(g, f);
  const RealVector xi = g.frequencies();
  for (Index k = 0; k < g.nodes; k += 37)
    EXPECT_NEAR(std::abs(fh(k) - std::exp(-0.5 * xi(k) * xi(k))), 0.0, 1e-12);
  EXPECT_LT((inverse_fourier(g, fh) - f).norm(), 1e-12);
}

TEST(Hermite, ValueAtZero) {
  Vector z = Vector::Zero(1);
  EXPECT_NEAR(std::real(hermite_functions(z, 1)(0, 0)), std::pow(std::numbers::pi, -0.25), 1e-15);
  EXPECT_NEAR(std::real(hermite_functions(z, 1)(0, 0)), 0.7511255, 1e-7);
}

TEST(Hermite, RecurrenceMatchesExplicitPolynomial) {
  Vector z(4);
  z << cplx(0.3, 0.5), cplx(-1.2, 0.5), cplx(2.0, -0.25), cplx(0.0, 1.0);
  const Matrix h = hermite_functions(z, 10);
  for (Index i = 0; i < z.size(); ++i)
    for (int n = 0; n < 10; ++n)
      EXPECT_NEAR(std::abs(h(i, n) - oracle::hermite_explicit(n, z(i))), 0.0, 1e-12)
          << "n=" << n << " z=" << z(i);
}

TEST(Hermite, ReferenceGramIsIdentity) {
  const FunctionFamily fam = hermite_family(20, Grid::symmetric(12.0, 4096));
  EXPECT_LT(max_offdiag(plain_gram(fam.grid, fam.g), Matrix::Identity(20, 20)), 1e-10);
  EXPECT_LT(fam.reference_residual, 1e-10);
}

TEST(Shifted, ZeroShiftIsReference) {
  const Grid grid = default_hermite_grid(8, 0.0);
  const FunctionFamily fam = shifted_family(0.0, 8, grid);
  EXPECT_LT((fam.f - fam.g).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT(max_offdiag(indefinite_gram(fam), sign_diag(8)), 1e-10);
  EXPECT_LT(max_offdiag(g_gram_fourier(fam), Matrix::Identity(8, 8)), 1e-10);
}

TEST(Shifted, IndefiniteGramFifteen) {
  const FunctionFamily fam = shifted_family(0.5, 15, default_hermite_grid(15, 0.5));
  const Matrix ig = indefinite_gram(fam);
  EXPECT_LT(max_offdiag(ig, sign_diag(15)), 1e-8);
  EXPECT_LT(std::abs(ig(0, 1)), 1e-8);
  const std::vector<int> s = measured_signs(fam);
  for (Index n = 0; n < 15; ++n) EXPECT_EQ(s[std::size_t(n)], n % 2 ? -1 : 1);
}

TEST(Shifted, IndefiniteGramMatchesQuadratureOracle) {
  const FunctionFamily& fam = shifted12();
  const oracle::Quadrature q(14.0, 2801);
  const Matrix ref = oracle::shifted_indefinite_gram(0.5, 4, q);
  const Matrix ig = indefinite_gram(fam);
  EXPECT_LT((ig.topLeftCorner(4, 4) - ref).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Shifted, GGramFourier) {
  const FunctionFamily& fam = shifted12();
  const Matrix gg = g_gram_fourier(fam);
  EXPECT_LT(max_offdiag(gg, Matrix::Identity(12, 12)), 1e-6);
  EXPECT_NEAR(std::abs(gg(0, 0) - 1.0), 0.0, 1e-8);
  // Independent route: direct Fourier quadrature of the first few functions.
  const oracle::Quadrature qx(12.0, 801), qxi(11.0, 441);
  const Matrix ref = oracle::shifted_g_gram_direct(0.5, 3, qx, qxi);
  EXPECT_LT((gg.topLeftCorner(3, 3) - ref).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Shifted, EigenResiduals) {
  const FunctionFamily& fam = shifted12();
  EXPECT_NEAR(fam.eigenvalues(3), 7.25, 1e-15);
  EXPECT_LT(eigen_residual(fam).residual.maxCoeff(), 1e-8);
  const FunctionFamily plain = shifted_family(0.0, 6, default_hermite_grid(6, 0.0));
  EXPECT_NEAR(plain.eigenvalues(3), 7.0, 1e-15);
  EXPECT_LT(eigen_residual(plain).residual(3), 1e-10);
}

TEST(Shifted, HGramInG) {
  const FunctionFamily fam = shifted_family(0.5, 10, default_hermite_grid(10, 0.5));
  const Matrix hg = h_gram_in_g(fam);
  Matrix expect = Matrix::Zero(10, 10);
  for (Index n = 0; n < 10; ++n) expect(n, n) = 1.0 + 2.0 * double(n) + 0.25;
  EXPECT_LT(max_offdiag(hg, expect), 1e-6);
  EXPECT_LT((hg - hg.adjoint()).cwiseAbs().maxCoeff(), 1e-8);
  const FunctionFamily plain = shifted_family(0.0, 6, default_hermite_grid(6, 0.0));
  Matrix expect0 = Matrix::Zero(6, 6);
  for (Index n = 0; n < 6; ++n) expect0(n, n) = 1.0 + 2.0 * double(n);
  EXPECT_LT(max_offdiag(h_gram_in_g(plain), expect0), 1e-8);
}

TEST(Shifted, RefusesUnresolvedGrid) {
  EXPECT_THROW(shifted_family(0.5, 20, Grid::symmetric(5.0, 4096)), ResolutionRefused);
}

TEST(CAction, SignsAndInvolution) {
  const FunctionFamily& fam = shifted12();
  const Vector f1 = fam.f.col(1), f2 = fam.f.col(2);
  EXPECT_LT(norm(fam.grid, Vector(c_action(fam, f2) - f2)), 1e-8);
  const Vector sum = f1 + f2;
  const Vector c = c_action(fam, sum);
  EXPECT_LT(norm(fam.grid, Vector(c - (f2 - f1))), 1e-8);
  EXPECT_LT(norm(fam.grid, Vector(c_action(fam, c) - sum)), 1e-8);
  // Series and multiplier forms of C agree on the span.
  EXPECT_LT(norm(fam.grid, Vector(c_action_multiplier(fam, sum) - c)), 1e-8);
}

TEST(CAction, ZeroShiftIsParity) {
  const FunctionFamily fam = shifted_family(0.0, 8, default_hermite_grid(8, 0.0));
  const Vector f = fam.f.col(3) + 0.5 * fam.f.col(4);
  EXPECT_LT(norm(fam.grid, Vector(c_action(fam, f) - parity(fam.grid, f))), 1e-10);
}

TEST(Expansion, MemberOfFamily) {
  const FunctionFamily& fam = shifted12();
  const Expansion e = expansion(fam, fam.f.col(5));
  for (Index n = 0; n < fam.size(); ++n)
    EXPECT_NEAR(std::abs(e.coefficients(n) - (n == 5 ? 1.0 : 0.0)), 0.0, 1e-8);
  EXPECT_LT(e.g_norm_error, 1e-8);
}

TEST(Expansion, ZeroTarget) {
  const FunctionFamily& fam = shifted12();
  const Expansion e = expansion(fam, Vector::Zero(fam.grid.nodes));
  EXPECT_EQ(e.coefficients.norm(), 0.0);
  EXPECT_EQ(e.g_norm_error, 0.0);
}

TEST(Expansion, GaussianConverges) {
  double previous = std::numeric_limits<double>::infinity();
  for (Index n : {4, 8, 16}) {
    const FunctionFamily fam = shifted_family(0.5, n, default_hermite_grid(16, 0.5));
    const Vector target = sampled(fam.grid, [](double x) { return std::exp(-x * x); });
    const Expansion e = expansion(fam, target);
    EXPECT_LE(e.g_norm_error, previous) << "n_max=" << n;
    previous = e.g_norm_error;
  }
  EXPECT_LT(previous, 1e-2);
}

TEST(Anharmonic, ZeroWeightIsReference) {
  const FunctionFamily fam =
      anharmonic_family(4.0, builtin_weight("zero"), 6, default_anharmonic_grid(4.0, 6));
  EXPECT_LT((fam.f - fam.g).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT(max_offdiag(indefinite_gram(fam), sign_diag(6)), 1e-10);
}

TEST(Anharmonic, GramsForRationalWeight) {
  const FunctionFamily& fam = anharmonic8();
  EXPECT_LT(max_offdiag(weighted_gram(fam), Matrix::Identity(8, 8)), 1e-12);
  EXPECT_LT(max_offdiag(indefinite_gram(fam), sign_diag(8)), 1e-6);
  EXPECT_LT(biorthogonality_residual(fam), 1e-6);
}

TEST(Anharmonic, GNormIsWeightedL2) {
  const FunctionFamily& fam = anharmonic8();
  const Vector f = fam.f.col(0) + cplx(0.3, 0.2) * fam.f.col(3);
  const Vector w = (-2.0 * fam.p.array()).exp().matrix().cast<cplx>();
  const double direct = fam.grid.h * std::real(f.dot(Vector(w.cwiseProduct(f))));
  EXPECT_NEAR(std::real(g_inner(fam, f, f)), direct, 1e-12);
  EXPECT_NEAR(direct, 1.0 + 0.13, 1e-10);
}

TEST(Anharmonic, LevelsMatchFullLineSolver) {
  const FunctionFamily& fam = anharmonic8();
  const Eigen::VectorXd ref = oracle::anharmonic_levels(4.0, fam.grid.L, 1499, 8);
  for (Index n = 0; n < 8; ++n)
    EXPECT_NEAR(fam.eigenvalues(n), ref(n), 1e-3 * ref(n)) << "level " << n;
  EXPECT_NEAR(fam.eigenvalues(0), 1.0603620904, 1e-4);
  EXPECT_LT(eigen_residual(fam).residual(0), 1e-4);
}

TEST(Anharmonic, RejectsBadParameters) {
  EXPECT_THROW(anharmonic_family(2.0, builtin_weight("zero"), 4, default_anharmonic_grid(4.0, 4)),
               InvalidInput);
  EXPECT_THROW(builtin_weight("cubic"), InvalidInput);
}
