// fyp: command-line front end over the header-only library. Parsing stops
// here; every subcommand body lives in fyp/cli.hpp where the test suite can
// drive it through plain streams.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fyp/cli.hpp"

int main(int argc, char **argv) {
  CLI::App app{"fractional Yule process toolkit"};
  app.set_version_flag("--version", std::string("fyp ") + fyp::kVersion);
  app.require_subcommand(1);

  // Seed default comes from the environment so scripted pipelines can pin
  // reproducibility once instead of per command. The option is registered on
  // each randomized subcommand so it can follow the subcommand name.
  std::uint64_t seed = 0;
  const auto add_seed = [&seed](CLI::App *sub) {
    sub->add_option("--seed", seed, "random stream seed")->envname("FYP_SEED");
  };

  fyp::cli::SimulateOptions sim;
  CLI::App *c_sim = app.add_subcommand("simulate", "generate one sample path");
  add_seed(c_sim);
  c_sim->add_option("--nu", sim.nu, "fractional order in (0,1]");
  c_sim->add_option("--lambda", sim.lambda, "birth rate, positive");
  c_sim->add_option("--births", sim.births, "number of births to generate")
      ->check(CLI::PositiveNumber);
  c_sim->add_flag("--classical", sim.classical,
                  "ignore --nu and run the classical Yule sampler");
  c_sim->add_flag("--gnuplot", sim.gnuplot,
                  "also write a plot script next to the output file");
  c_sim->add_option("-o,--output", sim.output,
                    "output CSV path (default: standard output)");

  fyp::cli::PmfOptions pmf;
  CLI::App *c_pmf =
      app.add_subcommand("pmf", "tabulate the population distribution");
  c_pmf->add_option("--nu", pmf.nu, "fractional order in (0,1]");
  c_pmf->add_option("--lambda", pmf.lambda, "birth rate, positive");
  c_pmf->add_option("--t", pmf.t, "evaluation time, positive");
  c_pmf->add_option("--kmax", pmf.k_max, "largest population size to tabulate")
      ->check(CLI::PositiveNumber);
  c_pmf->add_option("-o,--output", pmf.output,
                    "output CSV path (default: standard output)");

  fyp::cli::EstimateOptions est;
  CLI::App *c_est =
      app.add_subcommand("estimate", "fit (nu, lambda) to sojourn data");
  c_est->add_option("input", est.input,
                    "CSV of durations or a simulate output file "
                    "(default: standard input)");
  c_est->add_option("--method", est.method,
                    "estimator: log-moment or frac-moment");
  c_est->add_option("--kappa1", est.kappa1,
                    "first fractional-moment order (frac-moment only)");
  c_est->add_option("--kappa2", est.kappa2,
                    "second fractional-moment order (frac-moment only)");

  fyp::cli::StudyOptions study;
  CLI::App *c_study = app.add_subcommand(
      "study", "replicate the estimation study over a parameter grid");
  add_seed(c_study);
  c_study->add_option("--nu-grid", study.nu_grid, "nu values, comma separated")
      ->delimiter(',')
      ->required();
  c_study
      ->add_option("--lambda-grid", study.lambda_grid,
                   "lambda values, comma separated")
      ->delimiter(',')
      ->required();
  c_study->add_option("--n", study.n_list, "sample sizes, comma separated")
      ->delimiter(',')
      ->required();
  c_study->add_option("--replicates", study.replicates,
                      "replicates per grid cell")
      ->check(CLI::PositiveNumber);
  c_study->add_option("--method", study.method,
                      "estimator: log-moment or frac-moment");
  c_study->add_option("--kappa1", study.kappa1,
                      "first fractional-moment order (frac-moment only)");
  c_study->add_option("--kappa2", study.kappa2,
                      "second fractional-moment order (frac-moment only)");
  c_study->add_flag("--timing", study.timing,
                    "record wall time per cell (off keeps output byte-stable)");
  c_study->add_option("-o,--output", study.output,
                      "output CSV path (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help, --version
    std::cerr << "error (usage): " << e.what() << '\n';
    return fyp::cli::kExitUsage;
  }

  if (c_sim->parsed()) {
    sim.seed = seed;
    return fyp::cli::cmd_simulate(sim, std::cout, std::cerr);
  }
  if (c_pmf->parsed()) {
    return fyp::cli::cmd_pmf(pmf, std::cout, std::cerr);
  }
  if (c_est->parsed()) {
    return fyp::cli::cmd_estimate(est, std::cin, std::cout, std::cerr);
  }
  study.seed = seed;
  return fyp::cli::cmd_study(study, std::cout, std::cerr);
}
