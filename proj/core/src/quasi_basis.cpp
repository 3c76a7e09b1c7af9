#include "krein/quasi_basis.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "krein/errors.hpp"

namespace krein::qb {

std::string_view to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::hermite: return "hermite";
    case FamilyKind::shifted_hermite: return "shifted_hermite";
    case FamilyKind::weighted_anharmonic: return "weighted_anharmonic";
  }
  return "?";
}

namespace {

double zero_fn(double) { return 0.0; }

double rational_p(double x) { return x / (1.0 + x * x); }
double rational_dp(double x) {
  const double d = 1.0 + x * x;
  return (1.0 - x * x) / (d * d);
}
double rational_ddp(double x) {
  const double d = 1.0 + x * x;
  return (2.0 * x * x * x - 6.0 * x) / (d * d * d);
}

double arctan_p(double x) { return std::atan(x); }
double arctan_dp(double x) { return 1.0 / (1.0 + x * x); }
double arctan_ddp(double x) {
  const double d = 1.0 + x * x;
  return -2.0 * x / (d * d);
}

double tanh_p(double x) { return std::tanh(x); }
double tanh_dp(double x) {
  const double t = std::tanh(x);
  return 1.0 - t * t;
}
double tanh_ddp(double x) {
  const double t = std::tanh(x);
  return -2.0 * t * (1.0 - t * t);
}

double max_abs_offdiag_identity(const Matrix& a) {
  return (a - linalg::identity(a.rows())).cwiseAbs().maxCoeff();
}

// Largest sample at the two grid ends relative to the column maximum.
double edge_ratio(const Matrix& cols) {
  double worst = 0.0;
  for (Index c = 0; c < cols.cols(); ++c) {
    const double peak = cols.col(c).cwiseAbs().maxCoeff();
    const double edge = std::max(std::abs(cols(0, c)), std::abs(cols(cols.rows() - 1, c)));
    worst = std::max(worst, edge / peak);
  }
  return worst;
}

std::vector<int> parity_of(const Grid& grid, const Matrix& g) {
  std::vector<int> out;
  for (Index c = 0; c < g.cols(); ++c) {
    const cplx s = inner(grid, parity(grid, Vector(g.col(c))), Vector(g.col(c)));
    out.push_back(std::real(s) >= 0.0 ? 1 : -1);
  }
  return out;
}

RealVector weight_e2a(const FunctionFamily& fam, const RealVector& xi, double factor) {
  RealVector w(xi.size());
  for (Index k = 0; k < xi.size(); ++k)
    w(k) = std::abs(xi(k)) <= fam.band ? std::exp(factor * fam.a * xi(k)) : 0.0;
  return w;
}

void check_band(const FunctionFamily& fam, const Matrix& fhat) {
  const Grid& grid = fam.grid;
  if (grid.nyquist() < fam.band)
    throw ResolutionRefused("Fourier weight: band edge " + std::to_string(fam.band) +
                            " exceeds the Nyquist frequency " + std::to_string(grid.nyquist()));
  const RealVector xi = grid.frequencies();
  for (Index c = 0; c < fhat.cols(); ++c) {
    double total = 0.0, shell = 0.0;
    for (Index k = 0; k < grid.nodes; ++k) {
      const double ax = std::abs(xi(k));
      if (ax > fam.band) continue;
      const double e = std::exp(2.0 * fam.a * xi(k)) * std::norm(fhat(k, c));
      total += e;
      if (ax >= fam.band - 1.0) shell += e;
    }
    if (total > 0.0 && shell > 1e-12 * total)
      throw ResolutionRefused("Fourier weight: weighted spectrum not resolved inside the band "
                              "(shell fraction " + std::to_string(shell / total) + ")");
  }
}

// A(m,n) = (U_n, V_m)_G. The band gate is skipped for residual vectors whose
// spectrum is dominated by roundoff.
Matrix g_cross(const FunctionFamily& fam, const Matrix& u, const Matrix& v, bool gate = true) {
  const Grid& grid = fam.grid;
  switch (fam.kind) {
    case FamilyKind::shifted_hermite: {
      const Matrix uh = fourier(grid, u);
      const Matrix vh = fourier(grid, v);
      if (gate) {
        check_band(fam, uh);
        check_band(fam, vh);
      }
      const RealVector w = weight_e2a(fam, grid.frequencies(), 2.0);
      return grid.frequency_step() * (vh.adjoint() * (w.cast<cplx>().asDiagonal() * uh));
    }
    case FamilyKind::weighted_anharmonic: {
      const RealVector w = (-2.0 * fam.p.array()).exp().matrix();
      return grid.h * (v.adjoint() * (w.cast<cplx>().asDiagonal() * u));
    }
    case FamilyKind::hermite: break;
  }
  return grid.h * (v.adjoint() * u);
}

struct HalfSolve {
  RealVector values;
  RealMatrix vectors;
};

// Lowest k eigenpairs of the cell-centred half-line operator on (0, L) with
// even or odd reflection at 0 and a zero ghost beyond L.
HalfSolve solve_half(double beta, Index m, double h, bool even, Index k) {
  std::vector<double> d(static_cast<std::size_t>(m));
  std::vector<double> e(static_cast<std::size_t>(std::max<Index>(m - 1, 1)));
  const double ih2 = 1.0 / (h * h);
  for (Index j = 0; j < m; ++j) {
    const double x = (double(j) + 0.5) * h;
    d[std::size_t(j)] = 2.0 * ih2 + std::pow(x, beta);
  }
  d[0] += even ? -ih2 : ih2;
  for (Index j = 0; j + 1 < m; ++j) e[std::size_t(j)] = -ih2;

  HalfSolve out;
  out.values.resize(k);
  out.vectors.resize(m, k);
  std::vector<lapack_int> support(static_cast<std::size_t>(2 * k));
  lapack_int found = 0;
  const lapack_int info = LAPACKE_dstevr(
      LAPACK_COL_MAJOR, 'V', 'I', lapack_int(m), d.data(), e.data(), 0.0, 0.0, 1, lapack_int(k),
      0.0, &found, out.values.data(), out.vectors.data(), lapack_int(m), support.data());
  if (info != 0 || found != lapack_int(k))
    throw NumericalRankFailure("anharmonic eigensolver failed (dstevr info " +
                               std::to_string(info) + ")");
  return out;
}

}  // namespace

OddWeight builtin_weight(const std::string& name) {
  if (name == "zero") return {name, zero_fn, zero_fn, zero_fn};
  if (name == "rational") return {name, rational_p, rational_dp, rational_ddp};
  if (name == "arctan") return {name, arctan_p, arctan_dp, arctan_ddp};
  if (name == "tanh") return {name, tanh_p, tanh_dp, tanh_ddp};
  throw InvalidInput("unknown odd weight: " + name);
}

std::vector<std::string> builtin_weight_names() { return {"zero", "rational", "arctan", "tanh"}; }

Matrix hermite_functions(const Vector& z, Index count) {
  if (count < 1) throw InvalidInput("hermite_functions: count must be positive");
  const Index n = z.size();
  Matrix out(n, count);
  const double c0 = std::pow(std::numbers::pi, -0.25);
  for (Index i = 0; i < n; ++i) out(i, 0) = c0 * std::exp(-0.5 * z(i) * z(i));
  if (count > 1) out.col(1) = std::sqrt(2.0) * z.cwiseProduct(out.col(0));
  for (Index k = 1; k + 1 < count; ++k) {
    const double kk = double(k);
    out.col(k + 1) = std::sqrt(2.0 / (kk + 1.0)) * z.cwiseProduct(out.col(k)) -
                     std::sqrt(kk / (kk + 1.0)) * out.col(k - 1);
  }
  return out;
}

Grid default_hermite_grid(Index n_max, double a) {
  const double reach = std::sqrt(2.0 * double(n_max) + 1.0);
  const double L = std::max(12.0, 1.5 * reach + 2.0 * std::abs(a) + 6.0);
  Index nodes = 4096;
  const double band = reach + 2.0 * std::abs(a) + 6.0;
  while (std::numbers::pi / (2.0 * L / double(nodes)) < 2.0 * band) nodes *= 2;
  return Grid::symmetric(L, nodes);
}

FunctionFamily shifted_family(double a, Index n_max, const Grid& grid) {
  if (n_max < 1) throw InvalidInput("family size must be positive");
  FunctionFamily fam;
  fam.kind = a == 0.0 ? FamilyKind::hermite : FamilyKind::shifted_hermite;
  fam.grid = grid;
  fam.n_max = n_max;
  fam.a = a;
  const Vector x = grid.x.cast<cplx>();
  const Vector z = (grid.x.cast<cplx>().array() + cplx(0.0, a)).matrix();
  fam.g = hermite_functions(x, n_max);
  fam.f = a == 0.0 ? fam.g : hermite_functions(z, n_max);
  fam.p = RealVector::Zero(grid.nodes);
  fam.dp = fam.p;
  fam.ddp = fam.p;
  fam.band = std::sqrt(2.0 * double(n_max) + 1.0) + 2.0 * std::abs(a) + 6.0;

  fam.reference_residual = max_abs_offdiag_identity(plain_gram(grid, fam.g));
  if (fam.reference_residual > 1e-8)
    throw ResolutionRefused("grid does not resolve the reference family (Gram residual " +
                            std::to_string(fam.reference_residual) + ")");
  if (edge_ratio(fam.f) > 1e-12)
    throw ResolutionRefused("shifted functions have not decayed at the grid edge; enlarge L");

  fam.eigenvalues.resize(n_max);
  for (Index n = 0; n < n_max; ++n) fam.eigenvalues(n) = 1.0 + 2.0 * double(n) + a * a;
  fam.eigen_error = RealVector::Zero(n_max);
  fam.parity = parity_of(grid, fam.g);
  return fam;
}

FunctionFamily hermite_family(Index n_max, const Grid& grid) {
  return shifted_family(0.0, n_max, grid);
}

Grid default_anharmonic_grid(double beta, Index n_max) {
  // WKB estimate of the largest turning point, then room for the decay.
  const double lambda = std::pow(2.0 * (double(n_max) + 1.0), 2.0 * beta / (beta + 2.0));
  const double turning = std::pow(lambda, 1.0 / beta);
  return Grid::symmetric(std::max(6.0, turning + 5.0), 4096);
}

GrowthCheck growth_bound(const OddWeight& w, const Grid& grid, double alpha) {
  GrowthCheck out;
  double inner_max = 0.0, outer_max = 0.0;
  for (Index i = 0; i < grid.nodes; ++i) {
    const double x = grid.x(i);
    const double base = 1.0 + x * x;
    const double r = std::max({std::abs(w.p(x)) * std::pow(base, -alpha / 2.0),
                               std::abs(w.dp(x)) * std::pow(base, (1.0 - alpha) / 2.0),
                               std::abs(w.ddp(x)) * std::pow(base, (2.0 - alpha) / 2.0)});
    out.constant = std::max(out.constant, r);
    if (std::abs(x) <= grid.L / 2) inner_max = std::max(inner_max, r);
    if (std::abs(x) >= 0.9 * grid.L) outer_max = std::max(outer_max, r);
  }
  out.growing = outer_max > 10.0 * inner_max + 1e-300;
  return out;
}

FunctionFamily anharmonic_family(double beta, const OddWeight& weight, Index n_max,
                                 const Grid& grid) {
  if (!(beta > 2.0)) throw InvalidInput("anharmonic family needs beta > 2");
  if (n_max < 1) throw InvalidInput("family size must be positive");
  if (grid.nodes < 8) throw InvalidInput("grid too coarse");
  const Index m = grid.nodes / 2;
  const Index k_even = n_max / 2 + 1;
  const Index k_odd = n_max / 2 + 1;
  const HalfSolve even = solve_half(beta, m, grid.h, true, k_even);
  const HalfSolve odd = solve_half(beta, m, grid.h, false, k_odd);
  const HalfSolve even_c = solve_half(beta, m / 2, 2.0 * grid.h, true, k_even);
  const HalfSolve odd_c = solve_half(beta, m / 2, 2.0 * grid.h, false, k_odd);

  FunctionFamily fam;
  fam.kind = FamilyKind::weighted_anharmonic;
  fam.grid = grid;
  fam.n_max = n_max;
  fam.beta = beta;
  fam.weight_name = weight.name;
  fam.f.resize(grid.nodes, n_max);
  fam.g.resize(grid.nodes, n_max);
  fam.eigenvalues.resize(n_max);
  fam.eigen_error.resize(n_max);

  // Sturm oscillation: even and odd levels interlace. Anything else, or a
  // near-degenerate pair, means the two parity sectors are not separated.
  for (Index n = 0; n < n_max; ++n) {
    const bool is_even = n % 2 == 0;
    const HalfSolve& s = is_even ? even : odd;
    const HalfSolve& sc = is_even ? even_c : odd_c;
    const Index j = n / 2;
    const double lam = s.values(j);
    const double other = is_even ? odd.values(j) : even.values(j + 1);
    if (!(other > lam) || other - lam < 1e-8 * (1.0 + std::abs(lam)))
      throw ResolutionRefused("anharmonic eigensolver: parity sectors mix near level " +
                              std::to_string(n));
    fam.eigenvalues(n) = lam;
    fam.eigen_error(n) = std::abs(lam - sc.values(j)) / 3.0;

    RealVector v = s.vectors.col(j);
    Index peak = 0;
    v.cwiseAbs().maxCoeff(&peak);
    if (v(peak) < 0) v = -v;
    v /= std::sqrt(2.0 * grid.h);
    const double sign = is_even ? 1.0 : -1.0;
    for (Index i = 0; i < m; ++i) {
      fam.g(m + i, n) = v(i);
      fam.g(m - 1 - i, n) = sign * v(i);
    }
    fam.parity.push_back(is_even ? 1 : -1);
  }
  if (edge_ratio(fam.g) > 1e-10)
    throw ResolutionRefused("anharmonic eigenfunctions have not decayed at the grid edge");

  fam.p.resize(grid.nodes);
  fam.dp.resize(grid.nodes);
  fam.ddp.resize(grid.nodes);
  for (Index i = 0; i < grid.nodes; ++i) {
    fam.p(i) = weight.p(grid.x(i));
    fam.dp(i) = weight.dp(grid.x(i));
    fam.ddp(i) = weight.ddp(grid.x(i));
  }
  fam.f = fam.p.array().exp().matrix().cast<cplx>().asDiagonal() * fam.g;
  fam.reference_residual = max_abs_offdiag_identity(plain_gram(grid, fam.g));
  if (fam.reference_residual > 1e-8)
    throw ResolutionRefused("anharmonic reference family is not orthonormal");
  fam.growth_warning = growth_bound(weight, grid, beta / 2.0 + 0.5).growing;
  return fam;
}

Matrix plain_gram(const Grid& grid, const Matrix& cols) { return grid.h * (cols.adjoint() * cols); }

Matrix indefinite_gram(const FunctionFamily& fam) {
  return fam.grid.h * (fam.f.adjoint() * parity(fam.grid, fam.f));
}

std::vector<int> measured_signs(const FunctionFamily& fam) {
  const Matrix gram = indefinite_gram(fam);
  std::vector<int> s;
  for (Index n = 0; n < gram.rows(); ++n) s.push_back(std::real(gram(n, n)) >= 0.0 ? 1 : -1);
  return s;
}

cplx g_inner(const FunctionFamily& fam, const Vector& u, const Vector& v) {
  return g_cross(fam, u, v)(0, 0);
}

Matrix g_gram(const FunctionFamily& fam, const Matrix& cols) { return g_cross(fam, cols, cols); }

Matrix g_gram_fourier(const FunctionFamily& fam) {
  if (fam.kind == FamilyKind::weighted_anharmonic)
    throw InvalidInput("g_gram_fourier applies to Hermite families");
  FunctionFamily shifted = fam;
  shifted.kind = FamilyKind::shifted_hermite;
  return g_cross(shifted, fam.f, fam.f);
}

Matrix weighted_gram(const FunctionFamily& fam) {
  if (fam.kind != FamilyKind::weighted_anharmonic)
    throw InvalidInput("weighted_gram applies to the anharmonic family");
  return g_cross(fam, fam.f, fam.f);
}

namespace {

// Central differences with zero samples outside the grid.
Matrix second_difference(const Grid& grid, const Matrix& u) {
  const Index n = u.rows();
  Matrix out(n, u.cols());
  const double ih2 = 1.0 / (grid.h * grid.h);
  for (Index c = 0; c < u.cols(); ++c)
    for (Index i = 0; i < n; ++i) {
      const cplx left = i > 0 ? u(i - 1, c) : cplx(0.0);
      const cplx right = i + 1 < n ? u(i + 1, c) : cplx(0.0);
      out(i, c) = (left - 2.0 * u(i, c) + right) * ih2;
    }
  return out;
}

Matrix first_difference(const Grid& grid, const Matrix& u) {
  const Index n = u.rows();
  Matrix out(n, u.cols());
  const double i2h = 0.5 / grid.h;
  for (Index c = 0; c < u.cols(); ++c)
    for (Index i = 0; i < n; ++i) {
      const cplx left = i > 0 ? u(i - 1, c) : cplx(0.0);
      const cplx right = i + 1 < n ? u(i + 1, c) : cplx(0.0);
      out(i, c) = (right - left) * i2h;
    }
  return out;
}

Matrix apply_anharmonic(const FunctionFamily& fam, cplx drift) {
  const Grid& grid = fam.grid;
  RealVector potential(grid.nodes);
  for (Index i = 0; i < grid.nodes; ++i)
    potential(i) = std::pow(std::abs(grid.x(i)), fam.beta) + fam.ddp(i) - fam.dp(i) * fam.dp(i);
  const Vector coeff = drift * fam.dp.cast<cplx>();
  return -second_difference(grid, fam.f) + potential.cast<cplx>().asDiagonal() * fam.f +
         coeff.asDiagonal() * first_difference(grid, fam.f);
}

}  // namespace

Matrix apply_h(const FunctionFamily& fam) {
  if (fam.kind == FamilyKind::weighted_anharmonic) return apply_anharmonic(fam, 2.0);
  // -g''(z) + (x^2 + 2iax) g(z) with g'' from the ladder identities.
  const Grid& grid = fam.grid;
  const Vector z = (grid.x.cast<cplx>().array() + cplx(0.0, fam.a)).matrix();
  const Matrix ext = hermite_functions(z, fam.n_max + 2);
  Matrix out(grid.nodes, fam.n_max);
  for (Index n = 0; n < fam.n_max; ++n) {
    const double nn = double(n);
    Vector g2 = -(2.0 * nn + 1.0) * ext.col(n) +
                std::sqrt((nn + 1.0) * (nn + 2.0)) * ext.col(n + 2);
    if (n >= 2) g2 += std::sqrt(nn * (nn - 1.0)) * ext.col(n - 2);
    g2 *= 0.5;
    for (Index i = 0; i < grid.nodes; ++i) {
      const double x = grid.x(i);
      out(i, n) = -g2(i) + cplx(x * x, 2.0 * fam.a * x) * ext(i, n);
    }
  }
  return out;
}

EigenResidual eigen_residual(const FunctionFamily& fam) {
  const Matrix hf = apply_h(fam);
  EigenResidual r;
  r.residual.resize(fam.size());
  for (Index n = 0; n < fam.size(); ++n)
    r.residual(n) = norm(fam.grid, Vector(hf.col(n) - fam.eigenvalues(n) * fam.f.col(n))) /
                    norm(fam.grid, Vector(fam.f.col(n)));
  if (fam.kind != FamilyKind::weighted_anharmonic) {
    r.literal_form_residual = r.residual;
    return r;
  }
  const Matrix lit = apply_anharmonic(fam, cplx(0.0, 2.0));
  r.literal_form_residual.resize(fam.size());
  for (Index n = 0; n < fam.size(); ++n)
    r.literal_form_residual(n) =
        norm(fam.grid, Vector(lit.col(n) - fam.eigenvalues(n) * fam.f.col(n))) /
        norm(fam.grid, Vector(fam.f.col(n)));
  return r;
}

Matrix h_gram_in_g(const FunctionFamily& fam) { return g_cross(fam, apply_h(fam), fam.f); }

Vector c_action(const FunctionFamily& fam, const Vector& f) {
  const Vector coeff = fam.grid.h * (fam.f.adjoint() * parity(fam.grid, f));
  return fam.f * coeff;
}

Vector half_metric(const FunctionFamily& fam, const Vector& f) {
  switch (fam.kind) {
    case FamilyKind::shifted_hermite: {
      const RealVector w = weight_e2a(fam, fam.grid.frequencies(), 1.0);
      return fourier_multiplier(fam.grid, f, w, fam.band);
    }
    case FamilyKind::weighted_anharmonic:
      return (-fam.p.array()).exp().matrix().cast<cplx>().asDiagonal() * f;
    case FamilyKind::hermite: break;
  }
  return f;
}

Vector c_action_multiplier(const FunctionFamily& fam, const Vector& f) {
  switch (fam.kind) {
    case FamilyKind::shifted_hermite: {
      const RealVector w = weight_e2a(fam, fam.grid.frequencies(), 2.0);
      return parity(fam.grid, fourier_multiplier(fam.grid, f, w, fam.band));
    }
    case FamilyKind::weighted_anharmonic:
      return parity(fam.grid, Vector((-2.0 * fam.p.array()).exp().matrix().cast<cplx>()
                                         .asDiagonal() * f));
    case FamilyKind::hermite: break;
  }
  return parity(fam.grid, f);
}

double span_residual(const FunctionFamily& fam, const Vector& f) {
  const Vector c = fam.f.colPivHouseholderQr().solve(f);
  const double base = norm(fam.grid, f);
  return base == 0.0 ? 0.0 : norm(fam.grid, Vector(f - fam.f * c)) / base;
}

Expansion expansion(const FunctionFamily& fam, const Vector& g) {
  if (g.size() != fam.grid.nodes) throw InvalidInput("expansion: sample count mismatch");
  Expansion e;
  const double gg = std::real(g_inner(fam, g, g));
  if (!std::isfinite(gg)) throw InvalidInput("expansion: G-norm is not finite");
  e.g_norm = std::sqrt(std::max(0.0, gg));

  Matrix cf(fam.grid.nodes, fam.size());
  for (Index n = 0; n < fam.size(); ++n) cf.col(n) = c_action(fam, Vector(fam.f.col(n)));
  // c_n = [g, C f_n] = (P g, C f_n).
  e.coefficients = fam.grid.h * (cf.adjoint() * parity(fam.grid, g));
  const Vector r = g - fam.f * e.coefficients;
  e.g_norm_error = std::sqrt(std::max(0.0, std::real(g_cross(fam, r, r, false)(0, 0))));
  e.plain_error = norm(fam.grid, Vector(half_metric(fam, g) - fam.g * e.coefficients));
  return e;
}

double biorthogonality_residual(const FunctionFamily& fam) {
  const std::vector<int> s = measured_signs(fam);
  Matrix gamma = parity(fam.grid, fam.f);
  for (Index n = 0; n < fam.size(); ++n) gamma.col(n) *= double(s[std::size_t(n)]);
  // B(n,m) = (f_m, gamma_n).
  const Matrix b = fam.grid.h * (gamma.adjoint() * fam.f);
  return max_abs_offdiag_identity(b);
}

}  // namespace krein::qb
