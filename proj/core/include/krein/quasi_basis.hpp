#pragma once

#include <string>
#include <vector>

#include "krein/grid.hpp"

namespace krein::qb {

enum class FamilyKind { hermite, shifted_hermite, weighted_anharmonic };
std::string_view to_string(FamilyKind k);

/// Odd weight exponent p with its first two derivatives.
struct OddWeight {
  std::string name;
  double (*p)(double);
  double (*dp)(double);
  double (*ddp)(double);
};

/// "zero", "rational" (x/(1+x^2)), "arctan", "tanh".
OddWeight builtin_weight(const std::string& name);
std::vector<std::string> builtin_weight_names();

/// Columns hold f_0 .. f_{n_max-1} and the orthonormal reference g_n sampled
/// on the grid.
struct FunctionFamily {
  FamilyKind kind = FamilyKind::hermite;
  Grid grid;
  Index n_max = 0;
  double a = 0.0;
  double beta = 0.0;
  std::string weight_name;
  Matrix f;
  Matrix g;
  /// p, p', p'' on the grid (zero unless weighted_anharmonic).
  RealVector p;
  RealVector dp;
  RealVector ddp;
  /// Eigenvalues of H for f_n (1 + 2n + a^2, or finite-difference H0 values).
  RealVector eigenvalues;
  /// Richardson estimate |lambda_h - lambda_2h| / 3 (anharmonic only).
  RealVector eigen_error;
  /// +1 for even g_n, -1 for odd.
  std::vector<int> parity;
  /// ||(g_m, g_n) - I||_max.
  double reference_residual = 0.0;
  /// Upper edge of the resolved frequency band.
  double band = 0.0;
  /// sup |p^(k)| (1+x^2)^{(k-alpha)/2} grows towards the grid edge.
  bool growth_warning = false;

  Index size() const { return f.cols(); }
};

/// Hermite functions g_0..g_{count-1} at complex arguments by the three-term
/// recurrence.
Matrix hermite_functions(const Vector& z, Index count);

/// Reference family g_n (f_n = g_n). Throws ResolutionRefused when the grid
/// does not resolve g_{n_max-1}.
FunctionFamily hermite_family(Index n_max, const Grid& grid);
/// f_n(x) = g_n(x + i a).
FunctionFamily shifted_family(double a, Index n_max, const Grid& grid);
/// Default grid for the Hermite families: L = 12, 4096 nodes, enlarged for
/// large n_max or |a|.
Grid default_hermite_grid(Index n_max, double a);

/// g_n eigenfunctions of -d^2/dx^2 + |x|^beta by second-order finite
/// differences on the half line with even/odd reflection; f_n = e^p g_n.
FunctionFamily anharmonic_family(double beta, const OddWeight& weight, Index n_max,
                                 const Grid& grid);
Grid default_anharmonic_grid(double beta, Index n_max);

/// A(m,n) = [f_n, f_m] = (P f_n, f_m).
Matrix indefinite_gram(const FunctionFamily& fam);
/// Plain Gram (f_n, f_m) of arbitrary sampled columns.
Matrix plain_gram(const Grid& grid, const Matrix& cols);
/// Measured signs sign(Re [f_n, f_n]).
std::vector<int> measured_signs(const FunctionFamily& fam);

/// (u, v)_G: Fourier weight e^{2 a xi} (shifted Hermite, band-limited),
/// e^{-2p} pointwise (anharmonic), plain otherwise.
cplx g_inner(const FunctionFamily& fam, const Vector& u, const Vector& v);
/// Gram matrix (v_n, v_m)_G of sampled columns.
Matrix g_gram(const FunctionFamily& fam, const Matrix& cols);

/// (f_n, f_m)_G through the Fourier weight; throws ResolutionRefused when the
/// weighted tail reaches the band edge or the band exceeds the Nyquist limit.
Matrix g_gram_fourier(const FunctionFamily& fam);
/// (e^{-2p} f_n, f_m) for the anharmonic family.
Matrix weighted_gram(const FunctionFamily& fam);

/// H f_n sampled on the grid.
Matrix apply_h(const FunctionFamily& fam);

struct EigenResidual {
  /// ||H f_n - lambda_n f_n|| / ||f_n||.
  RealVector residual;
  /// Same with the coefficient of p' d/dx taken as 2i instead of 2 (anharmonic).
  RealVector literal_form_residual;
};
EigenResidual eigen_residual(const FunctionFamily& fam);

/// A(m,n) = (H f_n, f_m)_G.
Matrix h_gram_in_g(const FunctionFamily& fam);

/// sum_n [f, f_n] f_n.
Vector c_action(const FunctionFamily& fam, const Vector& f);
/// P e^Q f with e^Q = F^{-1} e^{2 a xi} F or e^{-2p}.
Vector c_action_multiplier(const FunctionFamily& fam, const Vector& f);
/// e^{Q/2} f: F^{-1} e^{a xi} F f or e^{-p} f.
Vector half_metric(const FunctionFamily& fam, const Vector& f);

/// Distance of f from span{f_n} relative to ||f||.
double span_residual(const FunctionFamily& fam, const Vector& f);

struct Expansion {
  /// c_n = [g, C f_n].
  Vector coefficients;
  /// ||g - sum c_n f_n||_G.
  double g_norm_error = 0.0;
  /// ||e^{Q/2} g - sum c_n g_n||.
  double plain_error = 0.0;
  double g_norm = 0.0;
};
/// Throws InvalidInput when ||g||_G is not finite.
Expansion expansion(const FunctionFamily& fam, const Vector& g);

/// max |(f_m, gamma_n) - delta_mn| with gamma_n = sign([f_n, f_n]) P f_n.
double biorthogonality_residual(const FunctionFamily& fam);

struct GrowthCheck {
  double constant = 0.0;
  bool growing = false;
};
/// Numerical check of |p^(k)| <= C (1+x^2)^{(alpha-k)/2}, k = 0, 1, 2.
GrowthCheck growth_bound(const OddWeight& w, const Grid& grid, double alpha);

}  // namespace krein::qb
