#include "dyadreg/pml.hpp"

#include <cmath>

namespace dyadreg {

namespace {

double checked_mean(double eta) {
  if (!std::isfinite(eta) || eta > kLinearPredictorCap) {
    throw Error(errc::non_finite_likelihood,
                "linear predictor " + std::to_string(eta) +
                    " exceeds exp() cap");
  }
  return std::exp(eta);
}

}  // namespace

double loglik_dyad(double y, const Eigen::Ref<const Eigen::VectorXd>& r,
                   const Eigen::Ref<const Eigen::VectorXd>& theta) {
  const double eta = r.dot(theta);
  return y * eta - checked_mean(eta);
}

Eigen::VectorXd score_dyad(double y,
                           const Eigen::Ref<const Eigen::VectorXd>& r,
                           const Eigen::Ref<const Eigen::VectorXd>& theta) {
  const double eta = r.dot(theta);
  return (y - checked_mean(eta)) * r;
}

Eigen::MatrixXd hessian_dyad(const Eigen::Ref<const Eigen::VectorXd>& r,
                             const Eigen::Ref<const Eigen::VectorXd>& theta) {
  const double eta = r.dot(theta);
  return (-checked_mean(eta)) * (r * r.transpose());
}

double composite_loglik(const DyadDataset& dataset,
                        const Eigen::VectorXd& theta) {
  const Eigen::MatrixXd& r = dataset.regressors();
  const Eigen::VectorXd& y = dataset.outcomes();
  const std::int64_t m = dataset.n_dyads();
  double sum = 0.0;
  for (std::int64_t k = 0; k < m; ++k) {
    const double eta = r.row(k).dot(theta);
    sum += y[k] * eta - checked_mean(eta);
  }
  return sum / static_cast<double>(m);
}

Eigen::VectorXd composite_score(const DyadDataset& dataset,
                                const Eigen::VectorXd& theta) {
  const Eigen::MatrixXd& r = dataset.regressors();
  const Eigen::VectorXd& y = dataset.outcomes();
  const std::int64_t m = dataset.n_dyads();
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(theta.size());
  for (std::int64_t k = 0; k < m; ++k) {
    const double eta = r.row(k).dot(theta);
    sum.noalias() += (y[k] - checked_mean(eta)) * r.row(k).transpose();
  }
  return sum / static_cast<double>(m);
}

Eigen::MatrixXd composite_hessian(const DyadDataset& dataset,
                                  const Eigen::VectorXd& theta) {
  const Eigen::MatrixXd& r = dataset.regressors();
  const std::int64_t m = dataset.n_dyads();
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(theta.size(), theta.size());
  for (std::int64_t k = 0; k < m; ++k) {
    const double eta = r.row(k).dot(theta);
    sum.noalias() -= checked_mean(eta) * (r.row(k).transpose() * r.row(k));
  }
  return sum / static_cast<double>(m);
}

}  // namespace dyadreg
