#include "krein/model_family.hpp"

#include <cmath>
#include <numeric>

#include "krein/errors.hpp"

namespace krein::model {

std::string_view to_string(Variant v) {
  return v == Variant::both_constraints ? "both" : "chi-plus-zero";
}

Variant parse_variant(std::string_view s) {
  if (s == "both" || s == "both_constraints" || s == "both-constraints")
    return Variant::both_constraints;
  if (s == "chi-plus-zero" || s == "chi_plus_zero") return Variant::chi_plus_zero;
  throw InvalidInput("unknown model variant: " + std::string(s));
}

double SequenceModelSpec::alpha_at(Index n) const {
  return alpha ? alpha(n) : 1.0 - 1.0 / double(n);
}

void validate(const SequenceModelSpec& spec) {
  if (!(spec.delta > 0.5 && spec.delta <= 1.5))
    throw InvalidInput("delta must lie in (1/2, 3/2]");
  if (spec.truncation < 1) throw InvalidInput("truncation N must be positive");
}

namespace {

Vector chi(const SequenceModelSpec& spec, bool plus, bool normalize) {
  const Index n_max = spec.truncation;
  Vector v = Vector::Zero(2 * n_max);
  for (Index n = 1; n <= n_max; ++n)
    v(plus ? plus_index(n) : minus_index(n)) = std::pow(double(n), -spec.delta);
  if (normalize) v.normalize();
  return v;
}

double partial_sum_term(const SequenceModelSpec& spec, Index n) {
  if (!spec.alpha) return std::pow(double(n), 2.0 - 2.0 * spec.delta) / double(2 * n - 1);
  const double a = spec.alpha_at(n);
  return std::pow(double(n), -2.0 * spec.delta) / (1.0 - a * a);
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = double(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace

ModelInstance build_model(const SequenceModelSpec& spec, const Tolerances& tol) {
  validate(spec);
  const Index n_max = spec.truncation;
  const Index dim = 2 * n_max;
  std::vector<int> signs(static_cast<std::size_t>(dim));
  for (Index i = 0; i < dim; ++i) signs[std::size_t(i)] = i % 2 == 0 ? 1 : -1;
  SignatureSpace space = SignatureSpace::diagonal(signs);

  Matrix t = Matrix::Zero(dim, dim);
  const cplx i_unit(0.0, 1.0);
  for (Index n = 1; n <= n_max; ++n) {
    const double a = spec.alpha_at(n);
    if (!(a >= 0.0 && a < 1.0)) throw InvalidInput("alpha_n must lie in [0, 1)");
    t(minus_index(n), plus_index(n)) = i_unit * a;
    t(plus_index(n), minus_index(n)) = -i_unit * a;
  }

  const bool plus_constrained = spec.variant == Variant::both_constraints;
  Vector chi_p = plus_constrained ? chi(spec, true, true) : Vector(Vector::Zero(dim));
  Vector chi_m = chi(spec, false, true);

  // M± = chi±^⊥ ∩ H±, built inside the coordinate blocks so the basis is
  // adapted to J.
  auto constrained = [](const Matrix& block, const Vector& c) -> Matrix {
    if (c.norm() == 0.0) return block;
    const Matrix coeff = (block.adjoint() * c).normalized();
    return block * linalg::complement(coeff);
  };
  const Matrix mp = constrained(space.basis_plus(), chi_p);
  const Matrix mm = constrained(space.basis_minus(), chi_m);
  Matrix domain(dim, mp.cols() + mm.cols());
  domain << mp, mm;
  PartialContraction t0 = PartialContraction::make(space, domain, t * domain, tol);
  return {space, t, chi_p, chi_m, t0};
}

double model_norm(const SequenceModelSpec& spec) {
  double best = 0.0;
  for (Index n = 1; n <= spec.truncation; ++n) best = std::max(best, std::abs(spec.alpha_at(n)));
  return best;
}

Case classify_analytic(const SequenceModelSpec& spec) {
  validate(spec);
  if (spec.delta <= 1.0) return Case::A;
  return spec.variant == Variant::both_constraints ? Case::B : Case::C;
}

XiDiagnostic xi_preimage_diagnostic(const SequenceModelSpec& spec, Index max_n,
                                    double threshold) {
  validate(spec);
  if (max_n < 16) throw InvalidInput("xi_preimage_diagnostic: need N up to at least 16");
  int levels = 0;
  while ((Index(1) << (levels + 1)) <= max_n) ++levels;

  XiDiagnostic d;
  d.threshold = threshold;
  double s = 0.0;
  Index n = 1;
  for (int k = 0; k <= levels; ++k) {
    const Index upto = Index(1) << k;
    for (; n <= upto; ++n) s += partial_sum_term(spec, n);
    d.N.push_back(upto);
    d.partial_sums.push_back(s);
  }
  for (int k = 0; k < levels; ++k) {
    d.increments.push_back(d.partial_sums[k + 1] - d.partial_sums[k]);
    d.ratios.push_back(d.partial_sums[k + 1] / d.partial_sums[k]);
  }

  std::vector<double> x, y_inc, y_sum;
  for (int k = levels / 2; k < levels; ++k) {
    x.push_back(double(k));
    y_inc.push_back(std::log2(d.increments[std::size_t(k)]));
    y_sum.push_back(std::log2(d.partial_sums[std::size_t(k)]));
  }
  d.exponent_estimate = slope(x, y_inc);
  d.s_growth_exponent = slope(x, y_sum);
  d.diverges = d.exponent_estimate > -threshold;
  d.marginal = std::abs(d.exponent_estimate) <= threshold;
  return d;
}

XiNumericCheck xi_preimage_numeric(const SequenceModelSpec& spec, const Tolerances& tol) {
  const ModelInstance m = build_model(spec, tol);
  const Index dim = m.space.dim();
  const Matrix xi = linalg::psd_sqrt(linalg::identity(dim) - m.T * m.T, tol.psd_clamp);
  const Vector raw = chi(spec, false, false);
  const Vector pre = xi.partialPivLu().solve(raw);

  XiNumericCheck c;
  c.N = spec.truncation;
  c.dense_value = pre.squaredNorm();
  for (Index n = 1; n <= spec.truncation; ++n) c.partial_sum += partial_sum_term(spec, n);
  c.relative_error = std::abs(c.dense_value - c.partial_sum) / c.partial_sum;
  c.truncated_density = density_test(m.T0, m.T, tol);
  return c;
}

DefectPrediction defect_prediction(const SequenceModelSpec& spec) {
  validate(spec);
  DefectPrediction p;
  const Index dim = 2 * spec.truncation;
  if (spec.delta <= 1.0) {
    p.trivial = true;
    p.predicted_case = Case::A;
    p.vectors = Matrix(dim, 0);
    p.description = "M trivial (case A)";
    return p;
  }
  if (spec.variant == Variant::both_constraints) {
    p.vectors.resize(dim, 2);
    p.vectors << chi(spec, true, true), chi(spec, false, true);
    p.p = 1;
    p.q = 1;
    p.predicted_case = Case::B;
    p.description = "M = span{chi+, chi-}, signature (1,1): hypermaximal neutral subspaces exist";
  } else {
    p.vectors = chi(spec, false, true);
    p.q = 1;
    p.predicted_case = Case::C;
    p.description = "M = span{chi-}, signature (0,1): no hypermaximal neutral subspace";
  }
  return p;
}

}  // namespace krein::model
