#ifndef FYP_CLI_HPP_
#define FYP_CLI_HPP_

// Command implementations behind the executable front end. Each command is
// a plain function of an options struct plus explicit streams, so the test
// suite can drive them without spawning processes. The binary in tools/
// only parses argv into these structs.
//
// Exit-code contract: 0 success, 2 usage or argument error, 3 I/O failure,
// 4 solver failure. Data goes to the output file or the out stream, never
// to the diagnostic stream; manifests accompany file output as a .json
// sidecar and go to the diagnostic stream otherwise.

#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fyp/distributions.hpp"
#include "fyp/errors.hpp"
#include "fyp/estimation.hpp"
#include "fyp/io.hpp"
#include "fyp/random.hpp"
#include "fyp/sampling.hpp"
#include "fyp/study.hpp"

namespace fyp {

inline constexpr const char *kVersion = "1.0.0";

namespace cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitSolver = 4;

struct SimulateOptions {
  double nu = 1.0;
  double lambda = 1.0;
  int births = 100;
  std::uint64_t seed = 0;
  bool classical = false;
  bool gnuplot = false;
  std::string output;  // empty means the out stream
};

struct PmfOptions {
  double nu = 1.0;
  double lambda = 1.0;
  double t = 1.0;
  int k_max = 20;
  std::string output;
};

struct EstimateOptions {
  std::string input;  // empty means the in stream
  std::string method = "log-moment";
  double kappa1 = 0.05;
  double kappa2 = 0.10;
};

struct StudyOptions {
  std::vector<double> nu_grid;
  std::vector<double> lambda_grid;
  std::vector<int> n_list;
  int replicates = 1;
  std::uint64_t seed = 0;
  std::string method = "log-moment";
  double kappa1 = 0.05;
  double kappa2 = 0.10;
  bool timing = false;
  std::string output;
};

namespace detail {

// Writes the run manifest: sidecar file next to file output, diagnostic
// stream otherwise (keeps the data channel clean either way).
inline void emit_manifest(const nlohmann::json &manifest,
                          const std::string &output_path, std::ostream &err) {
  if (output_path.empty()) {
    err << manifest.dump() << '\n';
    return;
  }
  const std::string path = output_path + ".manifest.json";
  std::ofstream f(path);
  if (!f) throw IoError("cannot write manifest: " + path);
  f << manifest.dump(2) << '\n';
}

// Runs `body(stream)` against the output file or the fallback stream.
template <class Body>
void with_output(const std::string &path, std::ostream &fallback,
                 const Body &body) {
  if (path.empty()) {
    body(fallback);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for writing: " + path);
  body(f);
  f.flush();
  if (!f) throw IoError("write failed: " + path);
}

inline int report_failure(const std::exception &e, const char *kind,
                          int code, std::ostream &err) {
  err << "error (" << kind << "): " << e.what() << '\n';
  return code;
}

}  // namespace detail

inline int cmd_simulate(const SimulateOptions &opt, std::ostream &out,
                        std::ostream &err) {
  try {
    if (opt.gnuplot && opt.output.empty()) {
      throw DomainError("--gnuplot needs a file output to reference");
    }
    RandomStream rng(opt.seed, 0);
    const SamplePath path =
        opt.classical
            ? simulate_classical_yule(rng, opt.lambda, opt.births)
            : simulate_path_alg2(rng, FypParams{opt.nu, opt.lambda},
                                 opt.births);
    detail::with_output(opt.output, out,
                        [&](std::ostream &os) { write_path_csv(os, path); });
    const char *algorithm =
        (path.algorithm == PathAlgorithm::classical) ? "classical"
                                                     : "alg2_path";
    nlohmann::json manifest = {
        {"version", kVersion},
        {"command", "simulate"},
        {"parameters",
         {{"nu", opt.classical ? 1.0 : opt.nu},
          {"lambda", opt.lambda},
          {"births", opt.births},
          {"algorithm", algorithm}}},
        {"seed", opt.seed}};
    detail::emit_manifest(manifest, opt.output, err);
    if (opt.gnuplot) {
      const std::string gp = opt.output + ".gp";
      std::ofstream f(gp);
      if (!f) throw IoError("cannot write plot script: " + gp);
      f << "set datafile separator ','\n"
        << "set xlabel 'time'\n"
        << "set ylabel 'population'\n"
        << "set key off\n"
        << "plot '" << opt.output << "' skip 1 using 2:3 with steps\n";
    }
    return kExitOk;
  } catch (const IoError &e) {
    return detail::report_failure(e, "io", kExitIo, err);
  } catch (const DomainError &e) {
    return detail::report_failure(e, "usage", kExitUsage, err);
  }
}

inline int cmd_pmf(const PmfOptions &opt, std::ostream &out,
                   std::ostream &err) {
  try {
    const FypParams params{opt.nu, opt.lambda};
    const StatePmf pmf = state_pmf(params, opt.t, opt.k_max);
    const double mean = population_mean(params, opt.t);
    const double variance = population_variance(params, opt.t);
    detail::with_output(opt.output, out, [&](std::ostream &os) {
      write_pmf_csv(os, pmf, mean, variance);
    });
    nlohmann::json manifest = {{"version", kVersion},
                               {"command", "pmf"},
                               {"parameters",
                                {{"nu", opt.nu},
                                 {"lambda", opt.lambda},
                                 {"t", opt.t},
                                 {"k_max", opt.k_max}}},
                               {"seed", 0}};
    detail::emit_manifest(manifest, opt.output, err);
    return kExitOk;
  } catch (const IoError &e) {
    return detail::report_failure(e, "io", kExitIo, err);
  } catch (const CancellationError &e) {
    return detail::report_failure(e, "cancellation", kExitUsage, err);
  } catch (const OverflowSignal &e) {
    return detail::report_failure(e, "overflow", kExitUsage, err);
  } catch (const DomainError &e) {
    return detail::report_failure(e, "usage", kExitUsage, err);
  }
}

inline int cmd_estimate(const EstimateOptions &opt, std::istream &in,
                        std::ostream &out, std::ostream &err) {
  try {
    if (opt.method != "log-moment" && opt.method != "frac-moment") {
      throw DomainError("method must be 'log-moment' or 'frac-moment'");
    }
    SojournData data;
    if (opt.input.empty()) {
      data = read_durations_csv(in);
    } else {
      std::ifstream f(opt.input);
      if (!f) throw IoError("cannot open input: " + opt.input);
      data = read_durations_csv(f);
    }
    const EstimationResult fit =
        (opt.method == "log-moment")
            ? estimate_log_moments(data)
            : estimate_fractional_moments(data, opt.kappa1, opt.kappa2);
    const char *method_name = (fit.method == EstimationMethod::log_moment)
                                  ? "log_moment"
                                  : "fractional_moment";
    out << "nu_hat=" << format_double(fit.nu_hat) << '\n'
        << "lambda_hat=" << format_double(fit.lambda_hat) << '\n'
        << "n=" << fit.n << '\n'
        << "method=" << method_name << '\n'
        << "converged=" << (fit.solver.converged ? "true" : "false") << '\n'
        << "iterations=" << fit.solver.iterations << '\n'
        << "residual=" << format_double(fit.solver.residual) << '\n';
    nlohmann::json summary = {
        {"nu_hat", fit.nu_hat},
        {"lambda_hat", fit.lambda_hat},
        {"n", fit.n},
        {"method", method_name},
        {"solver",
         {{"converged", fit.solver.converged},
          {"iterations", fit.solver.iterations},
          {"residual", fit.solver.residual}}}};
    out << summary.dump() << '\n';
    return fit.solver.converged ? kExitOk : kExitSolver;
  } catch (const IoError &e) {
    return detail::report_failure(e, "io", kExitIo, err);
  } catch (const ParseError &e) {
    return detail::report_failure(e, "parse", kExitUsage, err);
  } catch (const NoRootError &e) {
    err << "error (no_root): " << e.what()
        << " residual_lo=" << format_double(e.residual_lo())
        << " residual_hi=" << format_double(e.residual_hi()) << '\n';
    return kExitSolver;
  } catch (const KappaTooLargeError &e) {
    return detail::report_failure(e, "kappa_too_large", kExitSolver, err);
  } catch (const DegenerateDataError &e) {
    return detail::report_failure(e, "degenerate_data", kExitSolver, err);
  } catch (const DomainError &e) {
    return detail::report_failure(e, "usage", kExitUsage, err);
  }
}

inline int cmd_study(const StudyOptions &opt, std::ostream &out,
                     std::ostream &err) {
  try {
    if (opt.method != "log-moment" && opt.method != "frac-moment") {
      throw DomainError("method must be 'log-moment' or 'frac-moment'");
    }
    StudyConfig cfg;
    cfg.nu_grid = opt.nu_grid;
    cfg.lambda_grid = opt.lambda_grid;
    cfg.n_list = opt.n_list;
    cfg.replicates = opt.replicates;
    cfg.seed = opt.seed;
    cfg.method = (opt.method == "log-moment")
                     ? EstimationMethod::log_moment
                     : EstimationMethod::fractional_moment;
    cfg.kappa1 = opt.kappa1;
    cfg.kappa2 = opt.kappa2;
    cfg.record_timing = opt.timing;
    const StudyReport report = run_study(cfg);
    detail::with_output(opt.output, out, [&](std::ostream &os) {
      write_study_csv(os, report);
    });
    nlohmann::json manifest = {
        {"version", kVersion},
        {"command", "study"},
        {"parameters",
         {{"nu_grid", opt.nu_grid},
          {"lambda_grid", opt.lambda_grid},
          {"n_list", opt.n_list},
          {"replicates", opt.replicates},
          {"method", opt.method}}},
        {"seed", opt.seed}};
    detail::emit_manifest(manifest, opt.output, err);
    return kExitOk;
  } catch (const IoError &e) {
    return detail::report_failure(e, "io", kExitIo, err);
  } catch (const DomainError &e) {
    return detail::report_failure(e, "usage", kExitUsage, err);
  }
}

}  // namespace cli
}  // namespace fyp

#endif  // FYP_CLI_HPP_
