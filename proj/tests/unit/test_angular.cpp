#include <gtest/gtest.h>

#include "krein/angular.hpp"
#include "krein/errors.hpp"
#include "krein/linalg.hpp"
#include "krein/model_family.hpp"
#include "krein/random.hpp"
#include "oracles.hpp"

using namespace krein;

namespace {

Matrix unit(Index n, Index k) { return Matrix::Identity(n, n).col(k); }

// T0 e_from = value * e_to for each (from, to, value).
PartialContraction by_columns(const SignatureSpace& s,
                              std::initializer_list<std::tuple<Index, Index, double>> cols) {
  const Index n = s.dim();
  Matrix d(n, Index(cols.size())), a = Matrix::Zero(n, Index(cols.size()));
  Index c = 0;
  for (const auto& [from, to, value] : cols) {
    d.col(c) = unit(n, from);
    a(to, c) = value;
    ++c;
  }
  return PartialContraction::make(s, d, a);
}

}  // namespace

TEST(ExtractAngular, FundamentalDecompositionGivesZero) {
  const SignatureSpace s = SignatureSpace::diagonal({1, 1, -1});
  const PartialContraction t0 =
      extract_angular(s, Subspace::span(s.basis_plus()), Subspace::span(s.basis_minus()));
  EXPECT_TRUE(t0.full_domain());
  EXPECT_LT(oracle::opnorm(t0.action()), 1e-15);
  EXPECT_EQ(t0.dim_m_plus(), 2);
  EXPECT_EQ(t0.dim_m_minus(), 1);
}

TEST(ExtractAngular, TiltedLine) {
  const SignatureSpace s = SignatureSpace::diagonal({1, -1});
  Vector v(2);
  v << 1.0, 0.5;
  const PartialContraction t0 = extract_angular(s, Subspace::span(v), Subspace::zero(2));
  ASSERT_EQ(t0.dim_m_plus(), 1);
  ASSERT_EQ(t0.dim_m_minus(), 0);
  EXPECT_NEAR(std::abs(t0.m_plus()(0, 0)), 1.0, 1e-14);
  const Vector image = t0.as_operator().apply(unit(2, 0));
  EXPECT_NEAR(std::abs(image(0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(image(1) - 0.5), 0.0, 1e-14);
}

TEST(ExtractAngular, NeutralLineRejected) {
  const SignatureSpace s = SignatureSpace::diagonal({1, -1});
  Vector v(2);
  v << 1.0, 1.0;
  EXPECT_THROW(extract_angular(s, Subspace::span(v), Subspace::zero(2)), InvalidInput);
}

TEST(ExtractAngular, RoundTripThroughSubspaces) {
  random::Rng rng(21);
  for (int trial = 0; trial < 25; ++trial) {
    const PartialContraction t0 = random::partial_contraction(2 + trial % 6, rng);
    const auto [lp, lm] = reconstruct_subspaces(t0);
    const PartialContraction back = extract_angular(t0.space(), lp, lm);
    const Matrix a = t0.action() * t0.domain().adjoint();
    const Matrix b = back.action() * back.domain().adjoint();
    EXPECT_LT(oracle::opnorm(a - b), 1e-10) << "trial " << trial;
  }
}

TEST(PartialContractionTest, RejectsDomainThatIsNotJInvariant) {
  const SignatureSpace s = SignatureSpace::diagonal({1, -1});
  Vector v(2);
  v << 1.0, 0.3;
  EXPECT_THROW(PartialContraction::make(s, v, Vector::Zero(2)), InvalidInput);
}

TEST(PartialContractionTest, RejectsNonAnticommutingAction) {
  const SignatureSpace s = SignatureSpace::diagonal({1, -1});
  EXPECT_THROW(by_columns(s, {{0, 0, 0.5}}), InvalidInput);
}

TEST(PartialContractionTest, RejectsNormOne) {
  const SignatureSpace s = SignatureSpace::diagonal({1, -1});
  EXPECT_THROW(by_columns(s, {{0, 1, 1.5}}), InvalidInput);
}

TEST(Duality, OneDimensionalDomain) {
  const SignatureSpace s = SignatureSpace::diagonal({1, -1});
  EXPECT_TRUE(duality_test(by_columns(s, {{0, 1, 0.5}})));
}

TEST(Duality, AsymmetricPair) {
  const SignatureSpace s = SignatureSpace::diagonal({1, 1, -1, -1});
  const PartialContraction t0 = by_columns(s, {{0, 2, 0.5}, {2, 0, 0.25}});
  // (T0 e1, e3) = 1/2 against (e1, T0 e3) = 1/4.
  EXPECT_FALSE(duality_test(t0));
  EXPECT_NEAR(duality_residual(t0), 0.25, 1e-14);
}

TEST(Duality, SymmetricPair) {
  const SignatureSpace s = SignatureSpace::diagonal({1, 1, -1, -1});
  EXPECT_TRUE(duality_test(by_columns(s, {{0, 2, 0.5}, {2, 0, 0.5}})));
}

TEST(Definiteness, ZeroOnFullSpace) {
  const SignatureSpace s = SignatureSpace::diagonal({1, -1});
  const auto r = definiteness_class(by_columns(s, {{0, 1, 0.0}, {1, 0, 0.0}}));
  EXPECT_TRUE(r.uniformly_definite);
  EXPECT_TRUE(r.maximal);
}

TEST(Definiteness, HalfOnLine) {
  const SignatureSpace s = SignatureSpace::diagonal({1, -1});
  const auto r = definiteness_class(by_columns(s, {{0, 1, 0.5}}));
  EXPECT_TRUE(r.uniformly_definite);
  EXPECT_FALSE(r.maximal);
  EXPECT_FALSE(r.approaching_non_uniform);
}

TEST(Definiteness, LargeModelTruncationApproachesUnity) {
  const model::SequenceModelSpec spec{1.25, model::Variant::both_constraints, 10000, {}};
  const double norm = model::model_norm(spec);
  EXPECT_NEAR(norm, 1.0 - 1e-4, 1e-15);
  const auto r = classify_norm(norm, false);
  EXPECT_TRUE(r.uniformly_definite);
  EXPECT_TRUE(r.approaching_non_uniform);
}

TEST(C0, FundamentalDecompositionGivesJ) {
  const SignatureSpace s = SignatureSpace::diagonal({1, -1, 1});
  const PartialContraction t0 =
      extract_angular(s, Subspace::span(s.basis_plus()), Subspace::span(s.basis_minus()));
  const PartialOperator c0 = c0_operator(t0);
  ASSERT_EQ(c0.domain_dim(), 3);
  for (Index k = 0; k < 3; ++k)
    EXPECT_LT((c0.apply(unit(3, k)) - s.J() * unit(3, k)).norm(), 1e-14);
}

TEST(C0, FixesPositiveLine) {
  const SignatureSpace s = SignatureSpace::diagonal({1, -1});
  Vector v(2);
  v << 1.0, 0.5;
  const PartialContraction t0 = extract_angular(s, Subspace::span(v), Subspace::zero(2));
  EXPECT_LT((c0_operator(t0).apply(v) - v).norm(), 1e-14);
}

TEST(C0, InvolutionOnRandomInstances) {
  random::Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const PartialContraction t0 = random::partial_contraction(4, rng);
    const PartialOperator c0 = c0_operator(t0);
    for (Index k = 0; k < c0.domain_dim(); ++k) {
      const Vector x = c0.domain.col(k);
      EXPECT_LT((c0.apply(c0.apply(x)) - x).norm(), 1e-10);
    }
  }
}

TEST(C0, NotDualRejected) {
  const SignatureSpace s = SignatureSpace::diagonal({1, 1, -1, -1});
  EXPECT_THROW(c0_operator(by_columns(s, {{0, 2, 0.5}, {2, 0, 0.25}})), InvalidInput);
}

TEST(G0, ZeroGivesIdentity) {
  const SignatureSpace s = SignatureSpace::diagonal({1, -1});
  const PartialOperator g0 = cayley_g0(by_columns(s, {{0, 1, 0.0}, {1, 0, 0.0}}));
  for (Index k = 0; k < 2; ++k) EXPECT_LT((g0.apply(unit(2, k)) - unit(2, k)).norm(), 1e-14);
}

TEST(G0, HalfOnLine) {
  const SignatureSpace s = SignatureSpace::diagonal({1, -1});
  const PartialOperator g0 = cayley_g0(by_columns(s, {{0, 1, 0.5}}));
  Vector in(2), out(2);
  in << 1.0, 0.5;
  out << 1.0, -0.5;
  EXPECT_LT((g0.apply(in) - out).norm(), 1e-14);
}

TEST(G0, CayleyIdentityOnRandomInstances) {
  random::Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const PartialContraction t0 = random::partial_contraction(2 + trial % 5, rng);
    const PartialOperator g0 = cayley_g0(t0);
    // G0 (I + T0) x = (I - T0) x on D(T0).
    for (Index k = 0; k < t0.domain().cols(); ++k) {
      const Vector x = t0.domain().col(k);
      const Vector tx = t0.action().col(k);
      EXPECT_LT((g0.apply(x + tx) - (x - tx)).norm(), 1e-10);
    }
  }
}
