#pragma once

#include <cstdint>

#include "krein/extension.hpp"

namespace krein {

/// Metric operator G attached to an anticommuting self-adjoint contraction T
/// through G = (I - T)(I + T)^{-1}.
class GMetric {
 public:
  /// Throws CayleyUndefined when -1 is an eigenvalue of T.
  static GMetric from_contraction(const SignatureSpace& space, const Matrix& t,
                                  const Tolerances& tol = kDefaultTolerances);
  /// G positive semidefinite; a kernel marks the metric as degenerate.
  static GMetric from_operator(const SignatureSpace& space, const Matrix& g,
                               const Tolerances& tol = kDefaultTolerances);

  const SignatureSpace& space() const { return space_; }
  const Matrix& G() const { return g_; }
  /// sqrt(I - T^2).
  const Matrix& Xi() const { return xi_; }
  const Matrix& T() const { return t_; }
  /// (I + T) J (I + T)^{-1}: +1 on (I+T)H+, -1 on (I+T)H-.
  const Matrix& J_G() const { return j_g_; }
  bool degenerate() const { return degenerate_; }
  bool anticommuting() const { return anticommuting_; }
  /// lambda_max(G) / lambda_min(G); infinite when degenerate.
  double cond() const;
  /// Orthonormal basis of ker G (empty unless degenerate).
  const Matrix& kernel() const { return kernel_; }

 private:
  GMetric(SignatureSpace space, Matrix g, Matrix t, const Tolerances& tol);

  SignatureSpace space_;
  Matrix g_;
  Matrix t_;
  Matrix xi_;
  Matrix j_g_;
  Matrix kernel_;
  RealVector g_spectrum_;
  bool degenerate_ = false;
  bool anticommuting_ = false;
  Tolerances tol_;

  friend cplx g_inner(const GMetric&, const Vector&, const Vector&);
  friend cplx jg_product(const GMetric&, const Vector&, const Vector&);
};

/// f = f+ + f- with f± in (I+T)H±.
std::pair<Vector, Vector> max_decomposition(const GMetric& m, const Vector& f);

/// (Gf, g). Cross-checked against [f+, g+] - [f-, g-] when T anticommutes
/// with J; throws InvariantViolation on disagreement and InvalidInput for
/// components along ker G.
cplx g_inner(const GMetric& m, const Vector& f, const Vector& g);

/// (J_G f, g)_G, asserted equal to [f, g].
cplx jg_product(const GMetric& m, const Vector& f, const Vector& g);

/// sqrt(||f||^2 + (Gf, f)).
double energetic_norm(const GMetric& m, const Vector& f);

struct GAgreementReport {
  double cond_G = 0.0;
  /// max |(Gf,g) - ([f+,g+] - [f-,g-])| / (||f|| ||g|| max(1, ||G||)).
  double g_inner_residual = 0.0;
  /// max |[f,g]_G - [f,g]| / (||f|| ||g|| max(1, ||G||)).
  double jg_residual = 0.0;
  /// max | ||(I+T)x||_G - ||Xi x|| | / ||x||.
  double xi_norm_residual = 0.0;
  /// ||J_G^2 - I||.
  double involution_residual = 0.0;
  /// G-self-adjointness of J_G: ||G J_G - (G J_G)*||.
  double g_symmetry_residual = 0.0;
};

/// Residuals over `samples` random vector pairs; deterministic in `seed`.
GAgreementReport agreement_residuals(const GMetric& m, int samples, std::uint64_t seed);

}  // namespace krein
