// dyadreg — Poisson pseudo-maximum-likelihood regression on directed-dyad
// panels with dyadic-robust standard errors, plus the Monte Carlo coverage
// experiment.  See README.md for file formats and the report schemas.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "dyadreg/dataset.hpp"
#include "dyadreg/fit.hpp"
#include "dyadreg/io.hpp"
#include "dyadreg/pml.hpp"
#include "dyadreg/report.hpp"
#include "dyadreg/simulate.hpp"
#include "dyadreg/vcov.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDataError = 2;
constexpr int kExitNotConverged = 3;

std::vector<dyadreg::Estimator> parse_estimators(
    const std::vector<std::string>& names) {
  using dyadreg::Estimator;
  if (names.empty()) return dyadreg::all_estimators();
  std::vector<Estimator> out;
  for (const auto& name : names) {
    if (name == "huber") {
      out.push_back(Estimator::huber);
    } else if (name == "dyad") {
      out.push_back(Estimator::dyad);
    } else if (name == "fg") {
      out.push_back(Estimator::fg);
    } else {
      throw dyadreg::Error(dyadreg::errc::invalid_flag,
                           "--vcov must be one of huber|dyad|fg, got '" + name +
                               "'");
    }
  }
  return out;
}

dyadreg::Sigma1Denominator parse_denominator(const std::string& name) {
  if (name == "printed") return dyadreg::Sigma1Denominator::printed;
  if (name == "n-2") return dyadreg::Sigma1Denominator::n_minus_2;
  throw dyadreg::Error(dyadreg::errc::invalid_flag,
                       "--sigma1-denominator must be printed|n-2, got '" + name +
                           "'");
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw dyadreg::Error(dyadreg::errc::parse_error,
                         "cannot open '" + path + "' for writing");
  }
  out << content;
}

int default_threads() {
  if (const char* env = std::getenv("DYADREG_THREADS")) {
    try {
      return std::max(0, std::stoi(env));
    } catch (...) {
      // fall through to auto
    }
  }
  return 0;
}

struct FitArgs {
  std::string dyads_path;
  std::string outcome_col;
  std::vector<std::string> regressor_cols;
  std::string ego_col;
  std::string alter_col;
  std::string nodes_path;
  std::string node_label_col = "label";
  std::vector<std::string> ego_cols;
  std::vector<std::string> alter_cols;
  bool no_intercept = false;
  std::vector<std::string> vcov_names;
  double level = 0.95;
  std::string out_path;
  std::string format = "json";
  std::string sigma1_denominator = "printed";
};

int run_fit(const FitArgs& args) {
  using namespace dyadreg;
  DyadDataset dataset =
      load_dyads_csv(args.dyads_path, args.outcome_col, args.regressor_cols,
                     args.ego_col, args.alter_col, !args.no_intercept);
  if (!args.nodes_path.empty()) {
    NodeTable nodes = load_nodes_csv(args.nodes_path, args.node_label_col);
    dataset = expand_node_covariates(dataset, nodes, args.ego_cols, args.alter_cols);
  }

  FitResult fit = fit_poisson_pml(dataset);

  VcovOptions vopt;
  vopt.requested = parse_estimators(args.vcov_names);
  vopt.sigma1_denominator = parse_denominator(args.sigma1_denominator);

  VcovSet vcov;
  if (fit.converged) {
    vcov = assemble_vcov(fit, sym_scores(dataset, fit.theta_hat), vopt);
  } else {
    // Report the point estimates anyway; variance estimates at a
    // non-stationary point would be misleading.
    vcov.requested = {};
    vcov.warnings.push_back(
        "variance estimation skipped: the fit did not converge");
  }

  std::string content;
  if (args.format == "json") {
    content = fit_report_json(dataset, fit, vcov, args.level).dump(2) + "\n";
  } else if (args.format == "csv") {
    content = fit_report_csv(dataset, fit, vcov, args.level);
  } else {
    throw Error(errc::invalid_flag, "--format must be json|csv");
  }
  if (args.out_path.empty()) {
    std::cout << content;
  } else {
    write_text(args.out_path, content);
  }
  return fit.converged ? kExitOk : kExitNotConverged;
}

struct SimArgs {
  int n = 200;
  int reps = 1000;
  std::uint64_t seed = 0;
  double sigma = 1.0;
  double sigma_a = 0.25;
  std::vector<double> theta{-1.0, -0.5, 0.5};
  double level = 0.95;
  std::string out_path;
  std::string format = "json";
  int threads = default_threads();
  std::string sigma1_denominator = "printed";
};

int run_simulate(const SimArgs& args) {
  using namespace dyadreg;
  if (args.theta.size() != 3) {
    throw Error(errc::invalid_flag, "--theta needs exactly 3 values");
  }
  SimConfig config;
  config.n_nodes = args.n;
  config.n_reps = args.reps;
  config.master_seed = args.seed;
  config.sigma = args.sigma;
  config.sigma_a = args.sigma_a;
  config.theta_true = Eigen::Vector3d(args.theta[0], args.theta[1], args.theta[2]);
  config.nominal_level = args.level;
  config.threads = args.threads;
  config.sigma1_denominator = parse_denominator(args.sigma1_denominator);

  const CoverageReport report = run_coverage(config);

  std::string content;
  if (args.format == "json") {
    content = coverage_report_json(report).dump(2) + "\n";
  } else if (args.format == "csv") {
    content = coverage_report_csv(report);
  } else {
    throw Error(errc::invalid_flag, "--format must be json|csv");
  }
  if (args.out_path.empty()) {
    std::cout << content;
  } else {
    write_text(args.out_path, content);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dyadic Poisson pseudo-maximum-likelihood regression"};
  app.require_subcommand(1);

  FitArgs fit_args;
  CLI::App* fit = app.add_subcommand("fit", "Fit a PPML model on a dyad CSV");
  fit->add_option("--dyads", fit_args.dyads_path, "dyad-level CSV file")->required();
  fit->add_option("--outcome", fit_args.outcome_col, "outcome column")->required();
  fit->add_option("--regressors", fit_args.regressor_cols,
                  "comma-separated regressor columns")
      ->required()
      ->delimiter(',');
  fit->add_option("--ego", fit_args.ego_col, "ego (sender) label column")->required();
  fit->add_option("--alter", fit_args.alter_col, "alter (receiver) label column")
      ->required();
  fit->add_option("--nodes", fit_args.nodes_path, "optional node attribute CSV");
  fit->add_option("--node-label", fit_args.node_label_col,
                  "label column in the node CSV (default: label)");
  fit->add_option("--ego-cols", fit_args.ego_cols,
                  "node columns to attach on the ego side")
      ->delimiter(',');
  fit->add_option("--alter-cols", fit_args.alter_cols,
                  "node columns to attach on the alter side")
      ->delimiter(',');
  fit->add_flag("--no-intercept", fit_args.no_intercept,
                "do not prepend an intercept column");
  fit->add_option("--vcov", fit_args.vcov_names,
                  "variance estimators to report: huber|dyad|fg (repeatable; "
                  "default all)")
      ->delimiter(',');
  fit->add_option("--level", fit_args.level, "confidence level (default 0.95)");
  fit->add_option("--out", fit_args.out_path, "output path (default stdout)");
  fit->add_option("--format", fit_args.format, "json|csv (default json)");
  fit->add_option("--sigma1-denominator", fit_args.sigma1_denominator,
                  "triad-sum normalization: printed|n-2 (default printed)");

  SimArgs sim_args;
  CLI::App* sim =
      app.add_subcommand("simulate", "Run the Monte Carlo coverage experiment");
  sim->add_option("--n", sim_args.n, "number of nodes (default 200)");
  sim->add_option("--reps", sim_args.reps, "number of replications (default 1000)");
  sim->add_option("--seed", sim_args.seed, "master seed");
  sim->add_option("--sigma", sim_args.sigma, "dyad noise log-scale (default 1)");
  sim->add_option("--sigma-a", sim_args.sigma_a,
                  "node heterogeneity log-scale (default 0.25)");
  sim->add_option("--theta", sim_args.theta, "true coefficients, 3 values")
      ->delimiter(',')
      ->expected(3);
  sim->add_option("--level", sim_args.level, "nominal level (default 0.95)");
  sim->add_option("--out", sim_args.out_path, "output path (default stdout)");
  sim->add_option("--format", sim_args.format, "json|csv (default json)");
  sim->add_option("--threads", sim_args.threads,
                  "worker threads (default: DYADREG_THREADS or all cores)");
  sim->add_option("--sigma1-denominator", sim_args.sigma1_denominator,
                  "triad-sum normalization: printed|n-2 (default printed)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitDataError;
  }

  try {
    if (fit->parsed()) return run_fit(fit_args);
    if (sim->parsed()) return run_simulate(sim_args);
  } catch (const dyadreg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDataError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDataError;
  }
  return kExitOk;
}
