#include <gtest/gtest.h>

#include "krein/errors.hpp"
#include "krein/extension.hpp"
#include "krein/gspace.hpp"
#include "krein/random.hpp"
#include "oracles.hpp"

using namespace krein;

namespace {

SignatureSpace diag2() { return SignatureSpace::diagonal({1, -1}); }

Matrix half_offdiag() {
  Matrix t(2, 2);
  t << 0.0, 0.5, 0.5, 0.0;
  return t;
}

Vector vec2(cplx a, cplx b) {
  Vector v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST(GInner, ZeroTIsPlainInner) {
  random::Rng rng(2);
  const SignatureSpace s = random::signature_space(4, rng);
  const GMetric m = GMetric::from_contraction(s, Matrix::Zero(4, 4));
  const Vector f = random::gaussian(4, 1, rng), g = random::gaussian(4, 1, rng);
  EXPECT_NEAR(std::abs(g_inner(m, f, g) - g.dot(f)), 0.0, 1e-12);
}

TEST(GInner, MaximalPositiveVector) {
  const SignatureSpace s = diag2();
  const GMetric m = GMetric::from_contraction(s, half_offdiag());
  const Vector f = vec2(1.0, 0.5);
  EXPECT_NEAR(std::real(g_inner(m, f, f)), 0.75, 1e-14);
  EXPECT_NEAR(std::real(indefinite_product(s, f, f)), 0.75, 1e-15);
}

TEST(GInner, DualMaximalSubspacesAreOrthogonal) {
  const GMetric m = GMetric::from_contraction(diag2(), half_offdiag());
  EXPECT_NEAR(std::abs(g_inner(m, vec2(1.0, 0.5), vec2(0.5, 1.0))), 0.0, 1e-14);
}

TEST(GInner, MatchesDecompositionOnRandomInstances) {
  random::Rng rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    const SignatureSpace s = random::signature_space(2 + trial % 5, rng);
    const Matrix t = random::anticommuting_contraction(s, 0.85, rng);
    const GMetric m = GMetric::from_contraction(s, t);
    const Index n = s.dim();
    const Vector f = random::gaussian(n, 1, rng), g = random::gaussian(n, 1, rng);
    const auto [fp, fm] = max_decomposition(m, f);
    const auto [gp, gm] = max_decomposition(m, g);
    EXPECT_LT((fp + fm - f).norm(), 1e-10);
    const cplx split = indefinite_product(s, fp, gp) - indefinite_product(s, fm, gm);
    EXPECT_NEAR(std::abs(g_inner(m, f, g) - split), 0.0, 1e-9 * f.norm() * g.norm() * m.cond());
    // The G-inner product is the plain inner product against G = cayley(T).
    EXPECT_NEAR(std::abs(g_inner(m, f, g) - g.dot(cayley(t) * f)), 0.0, 1e-9 * m.cond());
  }
}

TEST(JGProduct, ZeroTIsIndefiniteProduct) {
  const SignatureSpace s = SignatureSpace::diagonal({1, -1, -1});
  const GMetric m = GMetric::from_contraction(s, Matrix::Zero(3, 3));
  EXPECT_LT(oracle::opnorm(m.J_G() - s.J()), 1e-15);
  random::Rng rng(6);
  const Vector f = random::gaussian(3, 1, rng), g = random::gaussian(3, 1, rng);
  EXPECT_NEAR(std::abs(jg_product(m, f, g) - indefinite_product(s, f, g)), 0.0, 1e-12);
}

TEST(JGProduct, AgreesWithIndefiniteProductForRandomT) {
  random::Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const SignatureSpace s = random::signature_space(2 + trial % 5, rng);
    const GMetric m = GMetric::from_contraction(s, random::anticommuting_contraction(s, 0.7, rng));
    const Index n = s.dim();
    const Vector f = random::gaussian(n, 1, rng), g = random::gaussian(n, 1, rng);
    EXPECT_LT(std::abs(jg_product(m, f, g) - indefinite_product(s, f, g)), 1e-10 * f.norm() * g.norm() * m.cond());
    EXPECT_LT(oracle::opnorm(m.J_G() * m.J_G() - Matrix::Identity(n, n)), 1e-9);
  }
}

TEST(JGProduct, NeutralVectorStaysNeutral) {
  const GMetric m = GMetric::from_contraction(diag2(), half_offdiag());
  const Vector f = vec2(1.0, 1.0);
  EXPECT_NEAR(std::abs(jg_product(m, f, f)), 0.0, 1e-14);
}

TEST(EnergeticNorm, Examples) {
  const SignatureSpace s = diag2();
  const GMetric id = GMetric::from_operator(s, Matrix::Identity(2, 2));
  EXPECT_NEAR(energetic_norm(id, vec2(0.6, 0.8)), std::sqrt(2.0), 1e-15);
  EXPECT_EQ(energetic_norm(id, Vector::Zero(2)), 0.0);
  Matrix g = Matrix::Zero(2, 2);
  g(0, 0) = 1.0 / 3.0;
  g(1, 1) = 3.0;
  const GMetric m = GMetric::from_operator(s, g);
  EXPECT_NEAR(energetic_norm(m, vec2(1.0, 0.0)), std::sqrt(1.0 + 1.0 / 3.0), 1e-15);
  // G = diag(1/3, 3) is the Cayley transform of diag(1/2, -1/2).
  EXPECT_NEAR(std::real(m.T()(0, 0)), 0.5, 1e-15);
  EXPECT_NEAR(std::real(m.T()(1, 1)), -0.5, 1e-15);
}

TEST(GMetricTest, XiNormIdentity) {
  random::Rng rng(17);
  const SignatureSpace s = random::signature_space(5, rng);
  const Matrix t = random::anticommuting_contraction(s, 0.6, rng);
  const GMetric m = GMetric::from_contraction(s, t);
  for (int k = 0; k < 5; ++k) {
    const Vector x = random::gaussian(5, 1, rng);
    const Vector y = x + t * x;
    // ||(I+T)x||_G = ||Xi x||.
    EXPECT_NEAR(std::sqrt(std::real(g_inner(m, y, y))), (m.Xi() * x).norm(), 1e-10);
  }
  const GAgreementReport r = agreement_residuals(m, 8, 5);
  EXPECT_LT(r.g_inner_residual, 1e-10);
  EXPECT_LT(r.jg_residual, 1e-10);
  EXPECT_LT(r.involution_residual, 1e-10);
}

TEST(GMetricTest, NormOneIsDegenerate) {
  Matrix t(2, 2);
  t << 0.0, 1.0, 1.0, 0.0;
  EXPECT_THROW(GMetric::from_contraction(diag2(), t), CayleyUndefined);
  Matrix g = Matrix::Zero(2, 2);
  g(0, 0) = 1.0;
  const GMetric m = GMetric::from_operator(diag2(), g);
  EXPECT_TRUE(m.degenerate());
  EXPECT_THROW(g_inner(m, vec2(0.0, 1.0), vec2(0.0, 1.0)), InvalidInput);
}

TEST(GMetricTest, RejectsBadInput) {
  EXPECT_THROW(GMetric::from_contraction(diag2(), 2.0 * Matrix::Identity(2, 2)), InvalidInput);
  EXPECT_THROW(GMetric::from_operator(diag2(), -Matrix::Identity(2, 2)), InvalidInput);
  EXPECT_THROW(GMetric::from_operator(diag2(), Matrix::Identity(3, 3)), InvalidInput);
}
