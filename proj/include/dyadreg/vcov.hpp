#ifndef DYADREG_VCOV_HPP
#define DYADREG_VCOV_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "dyadreg/dataset.hpp"
#include "dyadreg/fit.hpp"

namespace dyadreg {

enum class Estimator { huber, dyad, fg };

const char* estimator_name(Estimator e);

inline const std::vector<Estimator>& all_estimators() {
  static const std::vector<Estimator> all{Estimator::huber, Estimator::dyad,
                                          Estimator::fg};
  return all;
}

// Per-unordered-dyad symmetric scores t_ij = s_ij + s_ji at theta_hat,
// per-node aggregates g_i = sum_{j != i} t_ij, and the directed-score outer
// product sum needed by the per-observation sandwich.
struct SymScoreSet {
  int n_nodes = 0;
  // C(N,2) x p; row dyad_index(i,j) holds t_ij for i < j.
  Eigen::MatrixXd t;
  // N x p; row i holds g_i.
  Eigen::MatrixXd g;
  // p x p; sum over all ordered pairs of s_ij s_ij'.
  Eigen::MatrixXd directed_outer_sum;

  std::int64_t dyad_index(int i, int j) const {
    if (i > j) std::swap(i, j);
    const std::int64_t n = n_nodes;
    return static_cast<std::int64_t>(i) * n - (static_cast<std::int64_t>(i) * (i + 1)) / 2 +
           (j - i - 1);
  }
};

SymScoreSet sym_scores(const DyadDataset& dataset,
                       const Eigen::VectorXd& theta_hat);

// Normalization of the triad covariance estimate.  The printed form divides
// by N(N-1)(N-1); the alternative divides by N(N-1)(N-2), the number of
// dyad pairs sharing exactly one agent.
enum class Sigma1Denominator { printed, n_minus_2 };

// Triad covariance estimate via the explicit triple loop (oracle path):
//   (1/4) * (2/denom) * sum_{i<j<k} [t_ij t_ik' + t_ij t_jk' + t_ik t_jk'],
// symmetrized as (M + M')/2.  N < 3 yields the zero matrix.
Eigen::MatrixXd sigma1_naive(const SymScoreSet& sym,
                             Sigma1Denominator denom = Sigma1Denominator::printed);

// Same estimator through the O(N^2) per-node aggregation
//   (1/2) * sum_i [ g_i g_i' - sum_{j != i} t_ij t_ij' ].
Eigen::MatrixXd sigma1_fast(const SymScoreSet& sym,
                            Sigma1Denominator denom = Sigma1Denominator::printed);

// Combined own-dyad covariance estimate:
//   (1/4) * (2/(N(N-1))) * sum_{i<j} t_ij t_ij'.
Eigen::MatrixXd sigma23(const SymScoreSet& sym);

struct VcovOptions {
  std::vector<Estimator> requested = all_estimators();
  Sigma1Denominator sigma1_denominator = Sigma1Denominator::printed;
};

struct VcovSet {
  Eigen::MatrixXd sigma1_hat;
  Eigen::MatrixXd sigma23_hat;
  // Coefficient covariance matrices (already on the theta_hat scale).
  Eigen::MatrixXd vcov_fg;
  Eigen::MatrixXd vcov_dyad;
  Eigen::MatrixXd vcov_huber;
  // Standard errors; filled only for requested estimators, empty otherwise.
  Eigen::VectorXd se_fg;
  Eigen::VectorXd se_dyad;
  Eigen::VectorXd se_huber;
  std::vector<Estimator> requested;
  std::vector<std::string> warnings;

  const Eigen::VectorXd& se(Estimator e) const;
  const Eigen::MatrixXd& vcov(Estimator e) const;
};

// Assembles the three coefficient covariance matrices:
//   fg:    Gamma^-1 (4*S1 + (2/(N-1)) (S23 - 2*S1)) Gamma^-1' / N
//   dyad:  (2/(N(N-1))) Gamma^-1 S23 Gamma^-1'
//   huber: A^-1 B A^-1 with A = sum exp(r'theta) r r' over ordered pairs
//          (= N(N-1) Gamma) and B = sum s_ij s_ij'.
// Throws SingularGamma when gamma_hat is not positive definite and
// NegativeVarianceEstimate when a requested estimator has a non-positive
// diagonal entry.
VcovSet assemble_vcov(const FitResult& fit, const SymScoreSet& sym,
                      const VcovOptions& options = {});

struct WaldInterval {
  double lower = 0.0;
  double upper = 0.0;
};

// estimate +/- z_level * se with z from the standard normal quantile
// (1.959964 at level 0.95).
std::vector<WaldInterval> wald_ci(const Eigen::VectorXd& theta_hat,
                                  const Eigen::VectorXd& se, double level);

double normal_quantile_two_sided(double level);

}  // namespace dyadreg

#endif  // DYADREG_VCOV_HPP
