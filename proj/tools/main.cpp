#include <iostream>

#include "CLI11.hpp"
#include "cli.hpp"

using oscillat::cli::Command;
using oscillat::cli::RunConfig;

int main(int argc, char** argv) {
  CLI::App app{"Fractional maximal functions, mean oscillation and covers on discretized metric measure spaces"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--seed", cfg.seed, "Seed for every random choice; recorded in the config digest");
  app.add_option("-o,--out", cfg.out_path, "Output file (default: stdout)");
  app.add_option("--format", cfg.format, "csv, json or svg (default depends on the command)");

  auto space_opt = [&](CLI::App* sub, bool required) {
    auto* o = sub->add_option("--space", cfg.space_path, "Space file (.json or .csv)");
    if (required) o->required()->check(CLI::ExistingFile);
    else o->check(CLI::ExistingFile);
  };
  auto function_opt = [&](CLI::App* sub, bool required) {
    auto* o = sub->add_option("--function", cfg.function_path, "Function file (.json or .csv)")->check(CLI::ExistingFile);
    if (required) o->required();
  };
  auto family_opts = [&](CLI::App* sub) {
    sub->add_option("--convention", cfg.convention, "intrinsic or prescribed radii")
        ->check(CLI::IsMember({"intrinsic", "prescribed"}));
    sub->add_option("--rmin", cfg.rmin, "Smallest ball radius (default: family minimum)");
    sub->add_option("--rmax", cfg.rmax, "Largest ball radius (default: family maximum)");
    sub->add_option("--Q", cfg.Q, "Dimension exponent (default: 1 on intervals, fitted on point clouds)");
  };
  auto out_opts = [&](CLI::App* sub) {
    sub->add_option("-o,--out", cfg.out_path, "Output file (default: stdout)");
    sub->add_option("--format", cfg.format, "csv, json or svg");
    sub->add_option("--seed", cfg.seed, "Seed for every random choice");
  };

  auto* validate = app.add_subcommand("validate", "Check metric axioms and weights of a space");
  space_opt(validate, true);
  out_opts(validate);

  auto* geometry = app.add_subcommand("geometry", "Fit doubling, lower-mass and annular-decay constants");
  space_opt(geometry, true);
  geometry->add_option("--Q", cfg.Q, "Fix Q for the lower mass bound instead of fitting it");
  out_opts(geometry);

  auto* maximal = app.add_subcommand("maximal", "Fractional maximal function as CSV");
  space_opt(maximal, true);
  function_opt(maximal, true);
  maximal->add_option("--alpha", cfg.alpha, "Fractional order (0: Hardy-Littlewood)");
  family_opts(maximal);
  out_opts(maximal);

  auto* oscillation = app.add_subcommand("oscillation", "BMO, BLO and oscillation moduli (json) or per-ball rows (csv)");
  space_opt(oscillation, true);
  function_opt(oscillation, true);
  oscillation->add_option("--p", cfg.p, "Oscillation exponent p >= 1");
  family_opts(oscillation);
  out_opts(oscillation);

  auto* convolve = app.add_subcommand("convolve", "Discrete convolution f_delta (csv) or the partition of unity (json)");
  space_opt(convolve, true);
  function_opt(convolve, true);
  convolve->add_option("--delta", cfg.delta, "Cover scale delta > 0");
  out_opts(convolve);

  auto* verify = app.add_subcommand("verify", "Run numerical checks and write a JSON report");
  space_opt(verify, false);
  function_opt(verify, false);
  verify->add_option("--suite", cfg.suite, "all, sublinearity, types, blo, osc-lemmas or sarason")
      ->check(CLI::IsMember({"all", "sublinearity", "types", "blo", "osc-lemmas", "sarason"}));
  verify->add_option("--alpha", cfg.alpha, "Fractional order");
  verify->add_option("--p", cfg.p, "Exponent for the strong-type check (default 2)");
  verify->add_option("--lambda", cfg.lambda, "Smallest lambda for the oscillation lemmas (then 2x, 4x)");
  verify->add_option("--N", cfg.N, "Grid nodes of the default Lebesgue (0, 2) space");
  family_opts(verify);
  out_opts(verify);

  auto* gallery = app.add_subcommand("gallery", "Named examples with closed-form oracles");
  gallery->add_option("--name", cfg.name, "Example name")->required();
  gallery->add_option("--emit", cfg.format, "csv or svg")->check(CLI::IsMember({"csv", "svg"}));
  gallery->add_option("--N", cfg.N, "Grid nodes (>= 256)");
  gallery->add_option("--L", cfg.L, "Truncation length for examples on (0, inf)");
  gallery->add_option("--alpha", cfg.alpha, "Order for bounded-discont-Malpha (default 0.5)");
  gallery->add_option("--n", cfg.n, "Which f_n = f - n to use");
  gallery->add_option("--convention", cfg.convention, "intrinsic or prescribed radii")
      ->check(CLI::IsMember({"intrinsic", "prescribed"}));
  out_opts(gallery);

  CLI11_PARSE(app, argc, argv);

  const std::pair<CLI::App*, Command> commands[] = {
      {validate, Command::validate}, {geometry, Command::geometry}, {maximal, Command::maximal},
      {oscillation, Command::oscillation}, {convolve, Command::convolve}, {verify, Command::verify},
      {gallery, Command::gallery}};
  for (const auto& [sub, cmd] : commands) {
    if (sub->parsed()) cfg.command = cmd;
  }
  return oscillat::cli::run(cfg, std::cout, std::cerr);
}
