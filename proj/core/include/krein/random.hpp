#pragma once

#include <random>

#include "krein/angular.hpp"

namespace krein::random {

using Rng = std::mt19937_64;

Matrix gaussian(Index rows, Index cols, Rng& rng);

/// Haar-distributed unitary (QR of a complex Ginibre matrix with phase fix).
Matrix unitary(Index n, Rng& rng);

/// Fundamental symmetry U diag(±1) U* with both signs present.
SignatureSpace signature_space(Index n, Rng& rng, bool diagonal = false);

/// Self-adjoint T with JT = -TJ and ||T|| = max_norm.
Matrix anticommuting_contraction(const SignatureSpace& space, double max_norm, Rng& rng);

/// Random J-invariant subspace M+ ⊕ M- with dim M± drawn uniformly from
/// [0, dim H±].
Matrix j_invariant_domain(const SignatureSpace& space, Rng& rng);

/// T0 = T restricted to a random J-invariant domain, T a random
/// anticommuting self-adjoint contraction with norm in [0.3, 0.9].
PartialContraction partial_contraction(Index n, Rng& rng, bool diagonal_j = false);

/// Hermitian 0 <= X <= I with eigenvalues uniform in [0, 1].
Matrix unit_interval_operator(Index m, Rng& rng);

}  // namespace krein::random
