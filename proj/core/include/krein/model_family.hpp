#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "krein/extension.hpp"

namespace krein::model {

enum class Variant { both_constraints, chi_plus_zero };
std::string_view to_string(Variant v);
/// Accepts "both", "both_constraints", "chi-plus-zero", "chi_plus_zero".
Variant parse_variant(std::string_view s);

/// Sequence-space family on span{gamma_n^+, gamma_n^- : n <= N}.
struct SequenceModelSpec {
  double delta = 1.0;
  Variant variant = Variant::both_constraints;
  Index truncation = 64;
  /// alpha_n; defaults to 1 - 1/n. Other profiles are not classified.
  std::function<double(Index)> alpha;

  double alpha_at(Index n) const;
};

/// delta in (1/2, 3/2] and N >= 1; throws InvalidInput otherwise.
void validate(const SequenceModelSpec& spec);

/// Coordinates: gamma_n^+ at index 2(n-1), gamma_n^- at 2(n-1)+1.
inline Index plus_index(Index n) { return 2 * (n - 1); }
inline Index minus_index(Index n) { return 2 * (n - 1) + 1; }

struct ModelInstance {
  SignatureSpace space;
  Matrix T;
  /// Normalized truncations of sum n^{-delta} gamma_n^±; chi_plus is zero
  /// for the chi_plus_zero variant.
  Vector chi_plus;
  Vector chi_minus;
  PartialContraction T0;
};

ModelInstance build_model(const SequenceModelSpec& spec,
                          const Tolerances& tol = kDefaultTolerances);

/// max alpha_n = 1 - 1/N for the default profile.
double model_norm(const SequenceModelSpec& spec);

Case classify_analytic(const SequenceModelSpec& spec);

struct XiDiagnostic {
  std::vector<Index> N;
  /// S_N = sum_{n<=N} n^{-2 delta} / (1 - alpha_n^2) at dyadic N.
  std::vector<double> partial_sums;
  /// S_{2N} - S_N, one entry per dyadic step.
  std::vector<double> increments;
  /// S_{2N} / S_N.
  std::vector<double> ratios;
  /// Slope of log2(S_{2N} - S_N) against log2 N over the upper half of the
  /// dyadic range; the series diverges iff it is >= 0 asymptotically.
  double exponent_estimate = 0.0;
  /// Slope of log2 S_N against log2 N over the same window.
  double s_growth_exponent = 0.0;
  bool diverges = false;
  /// |exponent_estimate| <= threshold: logarithmic boundary behaviour.
  bool marginal = false;
  double threshold = 0.05;
};

/// Dyadic N = 1, 2, 4, ... up to max_n (rounded down to a power of two,
/// at least 16).
XiDiagnostic xi_preimage_diagnostic(const SequenceModelSpec& spec, Index max_n = Index(1) << 16,
                                    double threshold = 0.05);

struct XiNumericCheck {
  Index N = 0;
  /// ||Xi^{-1} chi||^2 from the dense truncated model, unnormalized chi.
  double dense_value = 0.0;
  double partial_sum = 0.0;
  double relative_error = 0.0;
  /// density_test on the truncation with T from build_model.
  bool truncated_density = false;
};

/// Dense cross-check of the closed-form partial sum on the built model.
XiNumericCheck xi_preimage_numeric(const SequenceModelSpec& spec,
                                   const Tolerances& tol = kDefaultTolerances);

struct DefectPrediction {
  bool trivial = false;
  Case predicted_case = Case::A;
  /// Columns spanning the predicted defect space (truncated).
  Matrix vectors;
  Index p = 0;
  Index q = 0;
  std::string description;
};

DefectPrediction defect_prediction(const SequenceModelSpec& spec);

}  // namespace krein::model
