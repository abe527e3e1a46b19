#include "dyadreg/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dyadreg/pml.hpp"

namespace dyadreg {

Eigen::MatrixXd pseudo_inverse_symmetric(const Eigen::MatrixXd& m,
                                         bool* singular) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double cutoff = 1e-12 * ev.cwiseAbs().maxCoeff();
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(ev.size());
  bool dropped = false;
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    if (std::abs(ev[k]) > cutoff && cutoff > 0.0) {
      inv[k] = 1.0 / ev[k];
    } else {
      dropped = true;
    }
  }
  if (singular) *singular = dropped;
  return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
}

namespace {

Eigen::VectorXd starting_theta(const DyadDataset& dataset,
                               const FitOptions& options) {
  if (options.initial_theta) {
    if (options.initial_theta->size() != dataset.n_regressors()) {
      throw Error(errc::invalid_flag,
                  "initial theta has length " +
                      std::to_string(options.initial_theta->size()) +
                      ", design has " + std::to_string(dataset.n_regressors()) +
                      " regressors");
    }
    return *options.initial_theta;
  }
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(dataset.n_regressors());
  const auto& names = dataset.regressor_names();
  auto it = std::find(names.begin(), names.end(), "intercept");
  if (it != names.end()) {
    const double ybar = dataset.outcomes().mean();
    if (!(ybar > 0.0)) {
      throw Error(errc::all_zero_outcomes,
                  "cannot initialize the intercept at log(mean y): mean "
                  "outcome is not positive");
    }
    theta[it - names.begin()] = std::log(ybar);
  }
  return theta;
}

}  // namespace

FitResult fit_poisson_pml(const DyadDataset& dataset,
                          const FitOptions& options) {
  if (options.max_iterations < 1 || options.step_halving_max < 1 ||
      !(options.gradient_tolerance > 0.0)) {
    throw Error(errc::invalid_flag, "invalid fit options");
  }

  FitResult res;
  Eigen::VectorXd theta = starting_theta(dataset, options);
  double loglik = composite_loglik(dataset, theta);
  Eigen::VectorXd score = composite_score(dataset, theta);
  bool hessian_was_singular = false;

  int it = 0;
  for (; it < options.max_iterations; ++it) {
    if (score.lpNorm<Eigen::Infinity>() <= options.gradient_tolerance) {
      res.converged = true;
      break;
    }
    const Eigen::MatrixXd gamma = -composite_hessian(dataset, theta);
    bool singular = false;
    const Eigen::VectorXd direction =
        pseudo_inverse_symmetric(gamma, &singular) * score;
    if (singular) hessian_was_singular = true;

    // Step-halve until the composite log-likelihood does not decrease.  The
    // comparison carries a rounding allowance: near the optimum the true
    // change per Newton step is far below the evaluation noise of the
    // log-likelihood itself, and a strict >= would reject genuine steps and
    // stall the score above tolerance.
    const double slack =
        1e-13 * (1.0 + std::abs(loglik));
    double step = 1.0;
    bool accepted = false;
    bool nonfinite_seen = false;
    for (int h = 0; h <= options.step_halving_max; ++h, step *= 0.5) {
      const Eigen::VectorXd candidate = theta + step * direction;
      double cand_loglik;
      try {
        cand_loglik = composite_loglik(dataset, candidate);
      } catch (const Error& e) {
        if (e.code() != errc::non_finite_likelihood) throw;
        nonfinite_seen = true;
        continue;
      }
      if (cand_loglik >= loglik - slack) {
        theta = candidate;
        loglik = cand_loglik;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      if (nonfinite_seen) {
        throw Error(errc::non_finite_likelihood,
                    "exp() overflow persisted through " +
                        std::to_string(options.step_halving_max) +
                        " step halvings at iteration " + std::to_string(it + 1));
      }
      // Full damping could not improve a finite log-likelihood; no further
      // progress is possible from here.
      res.warnings.push_back("StepHalvingExhausted: no ascent step found at iteration " +
                             std::to_string(it + 1));
      ++it;
      break;
    }
    score = composite_score(dataset, theta);
  }

  res.theta_hat = theta;
  res.iterations = it;
  res.final_score_norm = score.lpNorm<Eigen::Infinity>();
  if (!res.converged) {
    res.converged = res.final_score_norm <= options.gradient_tolerance;
  }
  if (!res.converged) {
    res.warnings.push_back("NotConverged: score norm " +
                           std::to_string(res.final_score_norm) + " after " +
                           std::to_string(res.iterations) + " iterations");
  }
  res.gamma_hat = -composite_hessian(dataset, theta);
  res.loglik_at_optimum = loglik;

  if (hessian_was_singular) {
    res.warnings.push_back(
        "SingularHessian: Moore-Penrose fallback used; variance estimation "
        "will fail");
    // A convergence claim is not meaningful on a rank-deficient design.
    if (res.converged) {
      res.converged = false;
      res.warnings.push_back(
          "NotConverged: downgraded because the Hessian was singular");
    }
  }
  return res;
}

}  // namespace dyadreg
