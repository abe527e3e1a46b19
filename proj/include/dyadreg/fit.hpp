#ifndef DYADREG_FIT_HPP
#define DYADREG_FIT_HPP

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "dyadreg/dataset.hpp"

namespace dyadreg {

struct FitOptions {
  int max_iterations = 100;
  // Infinity-norm threshold on the composite score at which the fit is
  // declared converged.
  double gradient_tolerance = 1e-10;
  int step_halving_max = 30;
  std::optional<Eigen::VectorXd> initial_theta;
};

struct FitResult {
  Eigen::VectorXd theta_hat;
  bool converged = false;
  int iterations = 0;
  double final_score_norm = 0.0;
  // Negated average Hessian at theta_hat; symmetric positive semidefinite.
  Eigen::MatrixXd gamma_hat;
  double loglik_at_optimum = 0.0;
  std::vector<std::string> warnings;
};

// Maximizes the composite Poisson pseudo log-likelihood by damped Newton
// iteration.  Default start: zero slopes, log(mean y) for a column named
// "intercept" when present.  Non-convergence is reported through the result
// (converged=false plus a warning), not thrown; AllZeroOutcomes and a
// NonFiniteLikelihood that survives step-halving are thrown.
FitResult fit_poisson_pml(const DyadDataset& dataset,
                          const FitOptions& options = {});

// Moore-Penrose pseudo-inverse of a symmetric matrix via eigendecomposition;
// eigenvalues at or below 1e-12 * max|eigenvalue| are treated as zero.
// Sets *singular when any eigenvalue was dropped.
Eigen::MatrixXd pseudo_inverse_symmetric(const Eigen::MatrixXd& m,
                                         bool* singular = nullptr);

}  // namespace dyadreg

#endif  // DYADREG_FIT_HPP
