#include "dyadreg/simulate.hpp"

#include <atomic>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

#include "dyadreg/fit.hpp"
#include "dyadreg/rng.hpp"

namespace dyadreg {

void SimConfig::validate() const {
  if (n_nodes < 3) {
    throw Error(errc::invalid_flag, "simulation needs n_nodes >= 3");
  }
  if (sigma < 0.0 || sigma_a < 0.0) {
    throw Error(errc::invalid_flag, "sigma and sigma_a must be >= 0");
  }
  if (!(nominal_level > 0.0 && nominal_level < 1.0)) {
    throw Error(errc::invalid_flag, "nominal level must lie in (0,1)");
  }
  if (n_reps < 1) {
    throw Error(errc::invalid_flag, "n_reps must be >= 1");
  }
  if (threads < 0) {
    throw Error(errc::invalid_flag, "threads must be >= 0");
  }
}

std::pair<DyadDataset, Eigen::VectorXd> gen_dataset(const SimConfig& config,
                                                    std::uint64_t rep_index) {
  config.validate();
  const int n = config.n_nodes;
  SplitMix64 rng(replication_seed(config.master_seed, rep_index));
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);

  // Node draws, in index order: x, y, w3, then the heterogeneity shock.
  std::vector<double> x(n), y(n), w3(n), a(n);
  const double a_shift = -0.5 * config.sigma_a * config.sigma_a;
  for (int i = 0; i < n; ++i) {
    x[i] = unif(rng);
    y[i] = unif(rng);
    w3[i] = unif(rng);
    a[i] = std::exp(config.sigma_a * normal(rng) + a_shift);
  }

  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = std::to_string(i);

  // Ordered-pair draws in lexicographic order.
  const double u_shift = -0.5 * config.sigma * config.sigma;
  std::vector<DyadRecord> records;
  records.reserve(static_cast<std::size_t>(n) * (n - 1));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double u = std::exp(config.sigma * normal(rng) + u_shift);
      const double dist = std::hypot(x[i] - x[j], y[i] - y[j]);
      DyadRecord rec;
      rec.ego = labels[i];
      rec.alter = labels[j];
      rec.r = {dist, w3[i], w3[j]};
      rec.y = std::exp(config.theta_true[0] * dist + config.theta_true[1] * w3[i] +
                       config.theta_true[2] * w3[j]) *
              a[i] * a[j] * u;
      records.push_back(std::move(rec));
    }
  }
  DyadDataset ds = build_dataset(labels, records, {"dist", "w3_ego", "w3_alter"});
  return {std::move(ds), Eigen::VectorXd(config.theta_true)};
}

namespace {

// The estimated model carries a constant, as it would in any applied PPML
// fit; its true value is 0 since the outcome model has none.
DyadDataset prepend_intercept(const DyadDataset& dataset) {
  const auto& labels = dataset.node_labels();
  const int n = dataset.n_nodes();
  const int p = dataset.n_regressors();
  std::vector<DyadRecord> records;
  records.reserve(static_cast<std::size_t>(dataset.n_dyads()));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      DyadRecord rec;
      rec.ego = labels[static_cast<std::size_t>(i)];
      rec.alter = labels[static_cast<std::size_t>(j)];
      rec.y = dataset.outcome(i, j);
      rec.r.resize(static_cast<std::size_t>(p) + 1);
      rec.r[0] = 1.0;
      const auto row = dataset.regressors().row(dataset.pair_index(i, j));
      for (int k = 0; k < p; ++k) rec.r[static_cast<std::size_t>(k) + 1] = row[k];
      records.push_back(std::move(rec));
    }
  }
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(p) + 1);
  names.emplace_back("intercept");
  for (const auto& name : dataset.regressor_names()) names.push_back(name);
  return build_dataset(labels, records, names);
}

}  // namespace

RepOutcome run_replication(const SimConfig& config, std::uint64_t rep_index) {
  RepOutcome out;
  try {
    auto [raw, theta_true] = gen_dataset(config, rep_index);
    const DyadDataset dataset = prepend_intercept(raw);
    FitResult fit = fit_poisson_pml(dataset);
    const Eigen::Index n_slopes = theta_true.size();
    out.theta_hat = fit.theta_hat.tail(n_slopes);
    out.iterations = fit.iterations;
    if (!fit.converged) {
      out.failure_reason = "NotConverged";
      return out;
    }
    VcovOptions vopt;
    vopt.requested = config.estimators;
    vopt.sigma1_denominator = config.sigma1_denominator;
    const VcovSet vcov = assemble_vcov(fit, sym_scores(dataset, fit.theta_hat), vopt);

    out.hits.resize(config.estimators.size());
    out.se.resize(config.estimators.size());
    for (std::size_t e = 0; e < config.estimators.size(); ++e) {
      const Eigen::VectorXd slope_se = vcov.se(config.estimators[e]).tail(n_slopes);
      const auto cis = wald_ci(out.theta_hat, slope_se, config.nominal_level);
      out.se[e] = slope_se;
      out.hits[e].resize(cis.size());
      for (std::size_t k = 0; k < cis.size(); ++k) {
        out.hits[e][k] =
            (cis[k].lower <= theta_true[static_cast<Eigen::Index>(k)] &&
             theta_true[static_cast<Eigen::Index>(k)] <= cis[k].upper)
                ? 1
                : 0;
      }
    }
    out.ok = true;
  } catch (const Error& e) {
    out.failure_reason = errc_name(e.code());
  }
  return out;
}

CoverageReport run_coverage(const SimConfig& config) {
  config.validate();
  const int n_reps = config.n_reps;
  std::vector<RepOutcome> outcomes(static_cast<std::size_t>(n_reps));

  unsigned workers = config.threads > 0
                         ? static_cast<unsigned>(config.threads)
                         : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(n_reps));

  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      const int idx = next.fetch_add(1);
      if (idx >= n_reps) return;
      outcomes[static_cast<std::size_t>(idx)] =
          run_replication(config, static_cast<std::uint64_t>(idx) + 1);
    }
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  CoverageReport report;
  report.config = config;
  report.parameter_names = {"dist", "w3_ego", "w3_alter"};
  const int p = static_cast<int>(report.parameter_names.size());

  std::vector<std::vector<long>> hit_counts(
      config.estimators.size(), std::vector<long>(static_cast<std::size_t>(p), 0));
  std::vector<double> sum(static_cast<std::size_t>(p), 0.0);
  std::vector<double> sumsq(static_cast<std::size_t>(p), 0.0);

  for (int rep = 0; rep < n_reps; ++rep) {
    const RepOutcome& out = outcomes[static_cast<std::size_t>(rep)];
    if (!out.ok) {
      report.failures.emplace_back(static_cast<std::uint64_t>(rep) + 1,
                                   out.failure_reason);
      continue;
    }
    ++report.included;
    for (int k = 0; k < p; ++k) {
      sum[static_cast<std::size_t>(k)] += out.theta_hat[k];
      sumsq[static_cast<std::size_t>(k)] += out.theta_hat[k] * out.theta_hat[k];
    }
    for (std::size_t e = 0; e < config.estimators.size(); ++e) {
      for (int k = 0; k < p; ++k) {
        hit_counts[e][static_cast<std::size_t>(k)] +=
            out.hits[e][static_cast<std::size_t>(k)];
      }
    }
  }
  if (report.included == 0) {
    throw std::runtime_error("coverage experiment failed: every replication failed (first reason: " +
                             (report.failures.empty() ? std::string("none")
                                                      : report.failures.front().second) +
                             ")");
  }

  const double inc = static_cast<double>(report.included);
  report.estimate_mean.resize(static_cast<std::size_t>(p));
  report.estimate_sd.resize(static_cast<std::size_t>(p));
  for (int k = 0; k < p; ++k) {
    const double mean = sum[static_cast<std::size_t>(k)] / inc;
    report.estimate_mean[static_cast<std::size_t>(k)] = mean;
    const double var =
        report.included > 1
            ? (sumsq[static_cast<std::size_t>(k)] - inc * mean * mean) / (inc - 1.0)
            : 0.0;
    report.estimate_sd[static_cast<std::size_t>(k)] =
        std::sqrt(std::max(0.0, var));
  }

  for (std::size_t e = 0; e < config.estimators.size(); ++e) {
    EstimatorCoverage cov;
    cov.estimator = config.estimators[e];
    cov.coverage.resize(static_cast<std::size_t>(p));
    cov.mc_se.resize(static_cast<std::size_t>(p));
    for (int k = 0; k < p; ++k) {
      const double prop =
          static_cast<double>(hit_counts[e][static_cast<std::size_t>(k)]) / inc;
      cov.coverage[static_cast<std::size_t>(k)] = prop;
      cov.mc_se[static_cast<std::size_t>(k)] =
          std::sqrt(prop * (1.0 - prop) / inc);
    }
    report.per_estimator.push_back(std::move(cov));
  }

  report.notes.push_back(
      "outcome model has no intercept; the fitted design prepends one (true "
      "value 0) and coverage is reported for the slopes (dist, w3_ego, "
      "w3_alter)");
  return report;
}

}  // namespace dyadreg
