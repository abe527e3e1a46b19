#ifndef DYADREG_SIMULATE_HPP
#define DYADREG_SIMULATE_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dyadreg/dataset.hpp"
#include "dyadreg/vcov.hpp"

namespace dyadreg {

// Monte Carlo experiment description.  Defaults reproduce the coverage
// experiment: N=200, theta=(-1,-1/2,1/2), sigma=1, sigma_a=1/4, 1000
// replications at nominal level 0.95.
struct SimConfig {
  int n_nodes = 200;
  Eigen::Vector3d theta_true{-1.0, -0.5, 0.5};
  double sigma = 1.0;     // log-scale of the dyad noise lognormal
  double sigma_a = 0.25;  // log-scale of the node heterogeneity lognormal
  int n_reps = 1000;
  double nominal_level = 0.95;
  std::uint64_t master_seed = 0;
  std::vector<Estimator> estimators = all_estimators();
  Sigma1Denominator sigma1_denominator = Sigma1Denominator::printed;
  int threads = 0;  // 0 = hardware concurrency

  void validate() const;
};

// Draws one synthetic panel.  Per node i, in index order: position
// (x_i, y_i) uniform on the unit square, w3_i standard uniform, a_i
// lognormal with unit mean and log-scale sigma_a.  Per ordered pair (i,j)
// in lexicographic order: u_ij lognormal with unit mean and log-scale
// sigma.  Then
//   Y_ij = exp(theta1 * dist_ij + theta2 * w3_i + theta3 * w3_j) a_i a_j u_ij
// with dist_ij the Euclidean distance between the two positions.  The
// design is (dist, w3_ego, w3_alter) with no intercept.
std::pair<DyadDataset, Eigen::VectorXd> gen_dataset(const SimConfig& config,
                                                    std::uint64_t rep_index);

struct RepOutcome {
  bool ok = false;
  std::string failure_reason;
  Eigen::VectorXd theta_hat;  // the three slope estimates
  // Indexed like config.estimators; hits[e][k] = 1 when the estimator's
  // interval covered theta_true[k].
  std::vector<std::vector<char>> hits;
  std::vector<Eigen::VectorXd> se;
  int iterations = 0;
};

// One replication: generate, fit, assemble intervals, record coverage hits.
// The fitted design prepends an intercept (true value 0) to the simulated
// regressors, matching how the model would be estimated in practice;
// coverage is evaluated for the three slopes only.  Failures
// (non-convergence, negative variance) are captured in the outcome, not
// thrown.
RepOutcome run_replication(const SimConfig& config, std::uint64_t rep_index);

struct EstimatorCoverage {
  Estimator estimator = Estimator::fg;
  std::vector<double> coverage;  // per parameter
  std::vector<double> mc_se;     // sqrt(p(1-p)/included)
};

struct CoverageReport {
  SimConfig config;
  std::vector<std::string> parameter_names;
  std::vector<EstimatorCoverage> per_estimator;
  std::vector<double> estimate_mean;  // per parameter, over included reps
  std::vector<double> estimate_sd;
  int included = 0;
  std::vector<std::pair<std::uint64_t, std::string>> failures;  // rep, reason
  std::vector<std::string> notes;
};

// Runs replications 1..n_reps (parallel when threads > 1; results are
// identical for any thread count) and aggregates coverage.  Aborts only if
// every replication fails.
CoverageReport run_coverage(const SimConfig& config);

}  // namespace dyadreg

#endif  // DYADREG_SIMULATE_HPP
