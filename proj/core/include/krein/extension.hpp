#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>

#include "krein/angular.hpp"

namespace krein {

/// The operator interval [T_mu, T_M] of all self-adjoint contractive
/// extensions of T0, together with the defect space M = range(T_M - T_mu).
struct ExtensionInterval {
  SignatureSpace space;
  /// The anticommuting self-adjoint extension the endpoints were built from.
  Matrix T_base;
  Matrix T_mu;
  Matrix T_M;
  /// Orthonormal basis of M adapted to J: the first p columns span M ∩ H+,
  /// the last q span M ∩ H-.
  Matrix defect;
  Index p = 0;
  Index q = 0;
  /// (T_M - T_mu)^{1/2}.
  Matrix defect_root;

  Index defect_dim() const { return defect.cols(); }
  /// J restricted to M in the adapted basis: diag(I_p, -I_q).
  Matrix J_defect() const;
};

/// A self-adjoint contractive extension T = T_mu + S^{1/2} X S^{1/2},
/// S = T_M - T_mu, parametrized by 0 <= X <= I on M.
struct ExtensionChoice {
  Matrix X;
  Matrix T;
  /// ||X - J(I - X)J|| on M.
  double x_residual = 0.0;
  /// ||J T + T J||.
  double anticommutation_residual = 0.0;
  bool solves_x_equation = false;
  bool anticommuting = false;
  /// X is an orthogonal projection.
  bool extremal = false;
};

/// Some self-adjoint contraction T' with T'|D(T0) = T0: the central
/// completion of the block column of T0 with respect to D ⊕ D^⊥.
Matrix any_sa_extension(const PartialContraction& t0,
                        const Tolerances& tol = kDefaultTolerances);

/// T = (T' - J T' J) / 2.
Matrix j_symmetrize(const SignatureSpace& space, const Matrix& t_prime);

/// Hard and soft extensions
///   T_mu = T - sqrt(I+T) Q1 sqrt(I+T),  T_M = T + sqrt(I-T) Q2 sqrt(I-T),
/// Q1, Q2 projecting onto the complements of sqrt(I±T) D(T0).
ExtensionInterval krein_interval(const PartialContraction& t0,
                                 const Tolerances& tol = kDefaultTolerances);

/// Solutions of X = J(I - X)J on M. Every solution has the form
/// X = I/2 + [[0, Z*], [Z, 0]] with ||Z|| <= 1/2 in the adapted basis; it is
/// a projection iff 2Z is unitary, which needs p = q.
struct XSolutionFamily {
  Index p = 0;
  Index q = 0;
  Matrix x_half;
  /// Projection onto a hypermaximal neutral subspace {u + W u}, if p = q.
  std::optional<Matrix> projection;
  /// I - projection: projection onto the J-image of that subspace.
  std::optional<Matrix> complement;
  /// X = I/2 is the only solution (p = 0 or q = 0).
  bool unique = false;
  std::string description;

  /// (1 - alpha) X0 + alpha (I - X0) for the projection solution X0.
  Matrix affine(double alpha) const;
};

/// With a seed, the unitary pairing W of the hypermaximal neutral subspace is
/// Haar-random; without one, W = I in the canonical eigenbasis order.
XSolutionFamily solve_x_equation(const ExtensionInterval& interval,
                                 std::optional<std::uint64_t> seed = std::nullopt);

/// ||X - J(I - X)J|| for X on the defect space.
double x_equation_residual(const ExtensionInterval& interval, const Matrix& x);

/// (1 - alpha) X0 + alpha (I - X0).
Matrix affine_solution(const Matrix& x0, double alpha);

/// Random solution I/2 + [[0, Z*], [Z, 0]] with ||Z|| <= 1/2.
Matrix random_x_solution(const ExtensionInterval& interval, std::mt19937_64& rng);

ExtensionChoice extension_from_x(const ExtensionInterval& interval, const Matrix& x,
                                 const Tolerances& tol = kDefaultTolerances);

struct ExtremalityReport {
  /// X is an orthogonal projection.
  bool projection_criterion = false;
  /// range(Xi) = Xi D(T0), Xi = sqrt(I - T^2): every G-seminorm class is
  /// approximable from D(G0). Computable for every T.
  bool xi_rank_criterion = false;
  /// The same rank test through G^{1/2}(I+T) with G the Cayley transform;
  /// only set when the Cayley transform exists.
  std::optional<bool> cayley_rank_criterion;
  bool cayley_defined = false;
  /// The reported verdict: the Cayley rank criterion when available,
  /// otherwise the projection criterion.
  bool extremal = false;
  /// Projection and rank criteria agree (only meaningful if cayley_defined).
  bool criteria_agree = true;
};

ExtremalityReport extremality_test(const PartialContraction& t0, const ExtensionChoice& choice,
                                   const Tolerances& tol = kDefaultTolerances);

enum class Case { A, B, C };
std::string_view to_string(Case c);

/// A: T_mu = T_M. B: M carries a hypermaximal neutral subspace (p = q).
/// C: otherwise.
Case classify_case(const ExtensionInterval& interval, const Tolerances& tol = kDefaultTolerances);

struct MaxSubspaces {
  Subspace plus;
  Subspace minus;
  /// (I+T)H± lost rank or contains numerically neutral directions.
  bool plus_degenerate = false;
  bool minus_degenerate = false;
  /// max |[f+, f-]| over unit basis vectors.
  double duality_residual = 0.0;
  /// Orthonormal basis of the neutral / collapsed directions found.
  Matrix degenerate_directions;
};

/// L±max = (I + T) H±.
MaxSubspaces max_subspaces(const SignatureSpace& space, const Matrix& t,
                           const Tolerances& tol = kDefaultTolerances);

/// range(Xi) ∩ (H ⊖ D(T0)) = {0} with Xi = sqrt(I - T^2): D(G0) is dense in
/// the G-metric space attached to T.
bool density_test(const PartialContraction& t0, const Matrix& t,
                  const Tolerances& tol = kDefaultTolerances);

/// G = (I - T)(I + T)^{-1}. Throws CayleyUndefined if -1 is (numerically)
/// an eigenvalue of T.
Matrix cayley(const Matrix& t, const Tolerances& tol = kDefaultTolerances);
/// T = (I - G)(I + G)^{-1} for positive definite G.
Matrix cayley_inv(const Matrix& g, const Tolerances& tol = kDefaultTolerances);

}  // namespace krein
