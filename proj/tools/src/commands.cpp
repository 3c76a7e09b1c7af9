#include "krein_cli/commands.hpp"

#include <cmath>
#include <iostream>
#include <sstream>

#include "krein/errors.hpp"
#include "krein/extension.hpp"
#include "krein/model_family.hpp"
#include "krein/quasi_basis.hpp"
#include "krein/random.hpp"
#include "krein/serialize.hpp"
#include "krein/verify.hpp"

namespace krein::cli {

using io::Json;

namespace {

void emit(const RunConfig& cfg, const std::string& name, const Json& report, std::ostream& out) {
  const std::string text = io::dump(report);
  io::write_text(cfg.output_dir / name, text);
  out << text;
}

void csv(const RunConfig& cfg, const std::string& name, const std::string& text) {
  io::write_text(cfg.output_dir / name, text);
}

Json extremality_json(const ExtremalityReport& r) {
  Json j;
  j["extremal"] = r.extremal;
  j["projection_criterion"] = r.projection_criterion;
  j["xi_rank_criterion"] = r.xi_rank_criterion;
  j["cayley_defined"] = r.cayley_defined;
  if (r.cayley_rank_criterion) j["cayley_rank_criterion"] = *r.cayley_rank_criterion;
  j["criteria_agree"] = r.criteria_agree;
  return j;
}

Json sample_json(const PartialContraction& t0, const ExtensionInterval& iv, const std::string& kind,
                 const Matrix& x, const Tolerances& tol) {
  const ExtensionChoice c = extension_from_x(iv, x, tol);
  Json j;
  j["kind"] = kind;
  j["X"] = io::to_json(c.X);
  j["T"] = io::to_json(c.T);
  j["x_residual"] = c.x_residual;
  j["anticommutation_residual"] = c.anticommutation_residual;
  j["solves_x_equation"] = c.solves_x_equation;
  j["anticommuting"] = c.anticommuting;
  j["extremality"] = extremality_json(extremality_test(t0, c, tol));
  j["density"] = density_test(t0, c.T, tol);
  return j;
}

int cmd_extend(const RunConfig& cfg, std::ostream& out) {
  const io::Problem prob = io::load_problem(cfg.input, cfg.tol);
  const PartialContraction& t0 = prob.t0;
  const ExtensionInterval iv = krein_interval(t0, cfg.tol);
  Json r;
  r["dimension"] = t0.space().dim();
  r["domain_dim"] = t0.domain().cols();
  r["T0_norm"] = t0.norm();
  r["duality"] = duality_test(t0, cfg.tol);
  r["T_base"] = io::to_json(iv.T_base);
  r["T_mu"] = io::to_json(iv.T_mu);
  r["T_M"] = io::to_json(iv.T_M);
  r["defect_dim"] = iv.defect_dim();
  r["signature"] = Json::array({iv.p, iv.q});
  r["case"] = std::string(to_string(classify_case(iv, cfg.tol)));
  r["endpoint_anticommutation_residual"] =
      linalg::op_norm(t0.space().J() * iv.T_mu + iv.T_M * t0.space().J());

  Json samples = Json::array();
  if (iv.defect_dim() > 0) {
    random::Rng rng(cfg.seed);
    const XSolutionFamily fam = solve_x_equation(iv, cfg.seed);
    samples.push_back(sample_json(t0, iv, "x_half", fam.x_half, cfg.tol));
    if (fam.projection) samples.push_back(sample_json(t0, iv, "projection", *fam.projection, cfg.tol));
    for (int k = 0; k < cfg.samples; ++k) {
      samples.push_back(sample_json(t0, iv, "random_solution", random_x_solution(iv, rng), cfg.tol));
      samples.push_back(sample_json(t0, iv, "random_contraction",
                                    random::unit_interval_operator(iv.defect_dim(), rng), cfg.tol));
    }
  } else {
    samples.push_back(sample_json(t0, iv, "unique", Matrix(0, 0), cfg.tol));
  }
  r["X_samples"] = std::move(samples);
  csv(cfg, "T_mu.csv", io::matrix_csv(iv.T_mu));
  csv(cfg, "T_M.csv", io::matrix_csv(iv.T_M));
  emit(cfg, "extend.json", r, out);
  return kOk;
}

int cmd_solve_x(const RunConfig& cfg, std::ostream& out) {
  const io::Problem prob = io::load_problem(cfg.input, cfg.tol);
  const ExtensionInterval iv = krein_interval(prob.t0, cfg.tol);
  Json r;
  r["signature"] = Json::array({iv.p, iv.q});
  r["defect_basis"] = io::to_json(iv.defect);
  if (iv.defect_dim() == 0) {
    r["description"] = "defect space is trivial: the extension is unique";
    emit(cfg, "solve-x.json", r, out);
    return kOk;
  }
  const XSolutionFamily fam = solve_x_equation(iv, cfg.seed);
  r["description"] = fam.description;
  r["unique"] = fam.unique;
  r["x_half"] = io::to_json(fam.x_half);
  r["x_half_residual"] = x_equation_residual(iv, fam.x_half);
  if (fam.projection) {
    r["projection"] = io::to_json(*fam.projection);
    r["projection_residual"] = x_equation_residual(iv, *fam.projection);
    r["complement"] = io::to_json(*fam.complement);
    Json affine = Json::array();
    for (double a : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      Json e;
      e["alpha"] = a;
      e["residual"] = x_equation_residual(iv, fam.affine(a));
      affine.push_back(std::move(e));
    }
    r["affine_family"] = std::move(affine);
  } else {
    r["projection"] = nullptr;
  }
  emit(cfg, "solve-x.json", r, out);
  return kOk;
}

int cmd_classify_model(const RunConfig& cfg, std::ostream& out) {
  const model::SequenceModelSpec spec{cfg.delta, model::parse_variant(cfg.variant), cfg.truncation,
                                      {}};
  const Case analytic = model::classify_analytic(spec);
  const model::XiDiagnostic d = model::xi_preimage_diagnostic(spec, cfg.max_n);
  const model::DefectPrediction p = model::defect_prediction(spec);

  std::ostringstream rows;
  rows << "N,S_N,increment,ratio\n";
  for (std::size_t k = 0; k < d.N.size(); ++k) {
    rows << d.N[k] << ',' << io::format_double(d.partial_sums[k]) << ',';
    if (k < d.increments.size())
      rows << io::format_double(d.increments[k]) << ',' << io::format_double(d.ratios[k]);
    else
      rows << ',';
    rows << '\n';
  }
  csv(cfg, "partial_sums.csv", rows.str());

  Json r;
  r["delta"] = cfg.delta;
  r["variant"] = std::string(model::to_string(spec.variant));
  r["analytic_case"] = std::string(to_string(analytic));
  r["partial_sums_csv"] = (cfg.output_dir / "partial_sums.csv").string();
  r["trend_verdict"] = d.diverges ? "diverges" : "converges";
  r["marginal"] = d.marginal;
  r["exponent_estimate"] = d.exponent_estimate;
  r["s_growth_exponent"] = d.s_growth_exponent;
  r["threshold"] = d.threshold;
  r["max_N"] = d.N.back();
  Json pred;
  pred["trivial"] = p.trivial;
  pred["case"] = std::string(to_string(p.predicted_case));
  pred["signature"] = Json::array({p.p, p.q});
  pred["description"] = p.description;
  r["defect_prediction"] = std::move(pred);
  emit(cfg, "classify-model.json", r, out);
  return kOk;
}

qb::Grid family_grid(const RunConfig& cfg, const qb::Grid& fallback) {
  return qb::Grid::symmetric(cfg.L.value_or(fallback.L), cfg.nodes.value_or(fallback.nodes));
}

int cmd_quasi_basis(const RunConfig& cfg, std::ostream& out) {
  qb::FunctionFamily fam;
  if (cfg.family == "hermite") {
    fam = qb::shifted_family(cfg.a, cfg.nmax, family_grid(cfg, qb::default_hermite_grid(cfg.nmax, cfg.a)));
  } else {
    fam = qb::anharmonic_family(cfg.beta, qb::builtin_weight(cfg.weight), cfg.nmax,
                                family_grid(cfg, qb::default_anharmonic_grid(cfg.beta, cfg.nmax)));
  }
  const Index n = fam.size();
  const Matrix ig = qb::indefinite_gram(fam);
  const Matrix gg = fam.kind == qb::FamilyKind::weighted_anharmonic ? qb::weighted_gram(fam)
                                                                     : qb::g_gram_fourier(fam);
  const Matrix hg = qb::h_gram_in_g(fam);
  const qb::EigenResidual er = qb::eigen_residual(fam);
  const std::vector<int> sigma = qb::measured_signs(fam);

  Matrix sig = Matrix::Zero(n, n), lam = Matrix::Zero(n, n);
  for (Index k = 0; k < n; ++k) {
    sig(k, k) = double(sigma[std::size_t(k)]);
    lam(k, k) = fam.eigenvalues(k);
  }
  double c_involution = 0.0;
  for (Index k = 0; k + 1 < n; ++k) {
    const Vector f = fam.f.col(k) + fam.f.col(k + 1);
    c_involution = std::max(
        c_involution, qb::norm(fam.grid, Vector(qb::c_action(fam, qb::c_action(fam, f)) - f)) /
                          qb::norm(fam.grid, f));
  }

  std::ostringstream res;
  res << "n,eigenvalue,residual,literal_form_residual,sigma,parity,eigen_error\n";
  for (Index k = 0; k < n; ++k)
    res << k << ',' << io::format_double(fam.eigenvalues(k)) << ','
        << io::format_double(er.residual(k)) << ','
        << io::format_double(er.literal_form_residual(k)) << ',' << sigma[std::size_t(k)] << ','
        << fam.parity[std::size_t(k)] << ',' << io::format_double(fam.eigen_error(k)) << '\n';
  csv(cfg, "residuals.csv", res.str());
  csv(cfg, "indefinite_gram.csv", io::matrix_csv(ig));
  csv(cfg, "g_gram.csv", io::matrix_csv(gg));
  csv(cfg, "h_gram.csv", io::matrix_csv(hg));

  Json r;
  r["family"] = std::string(qb::to_string(fam.kind));
  r["n_max"] = n;
  r["grid"] = {{"L", fam.grid.L}, {"nodes", fam.grid.nodes}, {"h", fam.grid.h}};
  if (fam.kind == qb::FamilyKind::weighted_anharmonic) {
    r["beta"] = fam.beta;
    r["weight"] = fam.weight_name;
    r["growth_warning"] = fam.growth_warning;
  } else {
    r["a"] = fam.a;
    r["band"] = fam.band;
  }
  Json s = Json::array();
  for (int v : sigma) s.push_back(v);
  r["sigma"] = std::move(s);
  r["reference_residual"] = fam.reference_residual;
  r["indefinite_gram_residual"] = (ig - sig).cwiseAbs().maxCoeff();
  r["g_gram_residual"] = (gg - linalg::identity(n)).cwiseAbs().maxCoeff();
  r["h_gram_diagonal_residual"] = (hg - lam).cwiseAbs().maxCoeff();
  r["h_gram_hermitian_residual"] = (hg - hg.adjoint()).cwiseAbs().maxCoeff();
  r["max_eigen_residual"] = er.residual.maxCoeff();
  r["biorthogonality_residual"] = qb::biorthogonality_residual(fam);
  r["c_involution_residual"] = c_involution;
  emit(cfg, "quasi-basis.json", r, out);
  return kOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  verify::Options opt;
  opt.seed = cfg.seed;
  opt.tol = cfg.tol;
  opt.threads = cfg.threads;
  const std::vector<verify::CheckResult> results = verify::run_verify(opt);
  Json checks = Json::array();
  bool ok = true;
  for (const auto& c : results) {
    Json j;
    j["module"] = c.module;
    j["name"] = c.name;
    j["passed"] = c.passed;
    j["value"] = c.value;
    j["detail"] = c.detail;
    checks.push_back(std::move(j));
    ok = ok && c.passed;
    std::cerr << (c.passed ? "ok   " : "FAIL ") << c.module << '/' << c.name << " ("
              << c.seconds << " s)" << (c.detail.empty() ? "" : " " + c.detail) << '\n';
  }
  Json r;
  r["seed"] = cfg.seed;
  r["passed"] = ok;
  r["checks"] = std::move(checks);
  emit(cfg, "verify.json", r, out);
  return ok ? kOk : kInvariantViolation;
}

}  // namespace

void validate(const RunConfig& cfg) {
  const Tolerances& t = cfg.tol;
  for (double v : {t.structural, t.rank, t.neutral_margin, t.psd_clamp, t.psd_rank})
    if (!(v > 0.0)) throw InvalidInput("tolerances must be positive");
  if (cfg.command == "extend" || cfg.command == "solve-x") {
    if (cfg.input.empty()) throw InvalidInput(cfg.command + " needs --input");
    if (!std::filesystem::exists(cfg.input))
      throw MalformedInput("input file does not exist: " + cfg.input.string());
  } else if (cfg.command == "quasi-basis") {
    if (cfg.family != "hermite" && cfg.family != "anharmonic")
      throw InvalidInput("quasi-basis family must be hermite or anharmonic");
  } else if (cfg.command != "classify-model" && cfg.command != "verify") {
    throw InvalidInput("unknown command: " + cfg.command);
  }
  if (cfg.samples < 0) throw InvalidInput("--samples must be nonnegative");
}

int run(const RunConfig& cfg, std::ostream& out) {
  validate(cfg);
  if (cfg.command == "extend") return cmd_extend(cfg, out);
  if (cfg.command == "solve-x") return cmd_solve_x(cfg, out);
  if (cfg.command == "classify-model") return cmd_classify_model(cfg, out);
  if (cfg.command == "quasi-basis") return cmd_quasi_basis(cfg, out);
  return cmd_verify(cfg, out);
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const InvalidInput*>(&e)) return kMalformedInput;
  if (dynamic_cast<const InvariantViolation*>(&e)) return kInvariantViolation;
  if (dynamic_cast<const CayleyUndefined*>(&e)) return kInvariantViolation;
  if (dynamic_cast<const ResolutionRefused*>(&e)) return kResolutionRefused;
  if (dynamic_cast<const NumericalRankFailure*>(&e)) return kResolutionRefused;
  return kFailure;
}

int run_guarded(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    return run(cfg, out);
  } catch (const std::exception& e) {
    err << "krein-lab: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

std::string csv_help() {
  return R"(Report files (under --out):
  extend          extend.json, T_mu.csv, T_M.csv
  solve-x         solve-x.json
  classify-model  classify-model.json, partial_sums.csv
  quasi-basis     quasi-basis.json, residuals.csv, indefinite_gram.csv,
                  g_gram.csv, h_gram.csv
  verify          verify.json
CSV columns:
  matrix files     row,re_0[,im_0],re_1[,im_1],...  (im columns only if any
                   entry is complex)
  partial_sums.csv N,S_N,increment,ratio  (increment = S_2N - S_N,
                   ratio = S_2N / S_N; empty on the last row)
  residuals.csv    n,eigenvalue,residual,literal_form_residual,sigma,parity,
                   eigen_error
Exit codes: 0 ok, 2 malformed input, 3 invariant violation,
            4 numerical-resolution refusal.
Environment: KREIN_LAB_THREADS caps worker threads.)";
}

}  // namespace krein::cli
