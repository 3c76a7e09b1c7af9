#include <iostream>

#include <CLI11.hpp>

#include "krein_cli/commands.hpp"

int main(int argc, char** argv) {
  using krein::cli::RunConfig;
  RunConfig cfg;
  CLI::App app{"krein-lab: Krein-space extension and quasi-basis toolkit"};
  app.footer(krein::cli::csv_help());
  app.require_subcommand(1);

  std::string out_dir = cfg.output_dir.string();
  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", out_dir, "Report directory")->capture_default_str();
    sub->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
    sub->add_option("--tol-structural", cfg.tol.structural, "Structural identity tolerance");
    sub->add_option("--tol-rank", cfg.tol.rank, "Relative rank cutoff");
    sub->add_option("--tol-psd", cfg.tol.psd_rank, "PSD range cutoff");
    sub->add_option("--tol-neutral", cfg.tol.neutral_margin, "Neutral band for Gram signs");
  };
  std::string input;

  auto* extend = app.add_subcommand("extend", "Krein interval, case and sampled extensions");
  extend->add_option("--input,-i", input, "Problem JSON {J, T0_domain, T0_action}")->required();
  extend->add_option("--samples", cfg.samples, "Random X samples of each kind")->capture_default_str();
  common(extend);

  auto* solve = app.add_subcommand("solve-x", "Solutions of X = J(I - X)J on the defect space");
  solve->add_option("--input,-i", input, "Problem JSON")->required();
  common(solve);

  auto* model = app.add_subcommand("classify-model", "Sequence-space model: case and xi diagnostic");
  model->add_option("--delta", cfg.delta, "Decay exponent in (1/2, 3/2]")->required();
  model->add_option("--variant", cfg.variant, "both | chi-plus-zero")->capture_default_str();
  model->add_option("--N", cfg.max_n, "Largest dyadic truncation of the partial sums")
      ->capture_default_str();
  common(model);

  auto* qb = app.add_subcommand("quasi-basis", "Quasi-basis diagnostics");
  qb->require_subcommand(1);
  common(qb);
  auto* herm = qb->add_subcommand("hermite", "Complex-shifted Hermite functions");
  herm->add_option("--a", cfg.a, "Shift")->capture_default_str();
  herm->add_option("--nmax", cfg.nmax, "Number of functions")->capture_default_str();
  herm->add_option("--L", cfg.L, "Grid half-width");
  herm->add_option("--nodes", cfg.nodes, "Grid nodes (power of two)");
  herm->fallthrough();
  auto* anh = qb->add_subcommand("anharmonic", "Weighted anharmonic eigenfunctions");
  anh->add_option("--beta", cfg.beta, "Exponent of |x|^beta (> 2)")->capture_default_str();
  anh->add_option("--p", cfg.weight, "zero | rational | arctan | tanh")->capture_default_str();
  anh->add_option("--nmax", cfg.nmax, "Number of functions")->capture_default_str();
  anh->add_option("--L", cfg.L, "Grid half-width");
  anh->add_option("--nodes", cfg.nodes, "Grid nodes (power of two)");
  anh->fallthrough();

  auto* ver = app.add_subcommand("verify", "Run every module invariant check");
  ver->add_option("--threads", cfg.threads, "Worker threads (0: auto)");
  common(ver);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : krein::cli::kMalformedInput;
  }

  for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
  if (cfg.command == "quasi-basis") cfg.family = herm->parsed() ? "hermite" : "anharmonic";
  cfg.input = input;
  cfg.output_dir = out_dir;
  return krein::cli::run_guarded(cfg, std::cout, std::cerr);
}
