#ifndef DYADREG_PML_HPP
#define DYADREG_PML_HPP

#include <Eigen/Dense>

#include "dyadreg/dataset.hpp"

namespace dyadreg {

// Linear predictors above this cap would overflow exp(); evaluation throws
// NonFiniteLikelihood instead so the solver can step-halve.
inline constexpr double kLinearPredictorCap = 700.0;

// Poisson pseudo log-likelihood of one directed dyad, up to the y!-term:
//   y * (r'theta) - exp(r'theta)
double loglik_dyad(double y, const Eigen::Ref<const Eigen::VectorXd>& r,
                   const Eigen::Ref<const Eigen::VectorXd>& theta);

// Gradient of loglik_dyad in theta: (y - exp(r'theta)) * r.
Eigen::VectorXd score_dyad(double y, const Eigen::Ref<const Eigen::VectorXd>& r,
                           const Eigen::Ref<const Eigen::VectorXd>& theta);

// Hessian of loglik_dyad in theta: -exp(r'theta) * r r'.
Eigen::MatrixXd hessian_dyad(const Eigen::Ref<const Eigen::VectorXd>& r,
                             const Eigen::Ref<const Eigen::VectorXd>& theta);

// Averages over all N(N-1) ordered pairs, summed in lexicographic (i,j)
// order with the 1/(N(N-1)) normalization applied once at the end.
double composite_loglik(const DyadDataset& dataset,
                        const Eigen::VectorXd& theta);
Eigen::VectorXd composite_score(const DyadDataset& dataset,
                                const Eigen::VectorXd& theta);
Eigen::MatrixXd composite_hessian(const DyadDataset& dataset,
                                  const Eigen::VectorXd& theta);

}  // namespace dyadreg

#endif  // DYADREG_PML_HPP
