#pragma once

namespace krein {

/// Numerical thresholds shared by the finite-dimensional routines. Every
/// operation that makes a yes/no decision takes one of these by const ref so
/// the CLI can override them.
struct Tolerances {
  /// Structural identities (J^2 = I, anticommutation, duality, X-equation).
  double structural = 1e-10;
  /// Relative singular-value cutoff for spans and ranks.
  double rank = 1e-12;
  /// |[f,f]| margins below this are reported as numerically neutral.
  double neutral_margin = 1e-9;
  /// A contraction norm within this of 1 is flagged as "at unity".
  double unity_flag = 1e-12;
  /// Gap 1 - ||T0|| below which a definite pair is reported as approaching
  /// the non-uniform regime.
  double approaching_unity = 1e-3;
  /// Negative eigenvalues down to -psd_clamp * scale are clamped to zero.
  double psd_clamp = 1e-12;
  /// Absolute eigenvalue cutoff (scaled by the matrix norm) for ranges of PSD
  /// matrices such as T_M - T_mu and I - T^2.
  double psd_rank = 1e-10;
  /// Extra margin demanded below 1 for strong contractions (default 0).
  double strict_contraction = 0.0;
  /// The Cayley transform is refused when lambda_min(I + T) is at or below
  /// this value.
  double cayley = 1e-10;
  /// Conditioning floor on lambda_min(I + T) for rank decisions made through
  /// an explicitly formed G; below it G is treated as numerically unbounded.
  double cayley_rank_guard = 1e-6;
  /// Rank cutoff used for PSD matrices assembled through an explicit G.
  double cayley_psd_rank = 1e-8;
};

inline const Tolerances kDefaultTolerances{};

}  // namespace krein
