#include "dyadreg/vcov.hpp"

#include <boost/math/distributions/normal.hpp>
#include <cmath>

#include "dyadreg/pml.hpp"

namespace dyadreg {

const char* estimator_name(Estimator e) {
  switch (e) {
    case Estimator::huber: return "huber";
    case Estimator::dyad: return "dyad";
    case Estimator::fg: return "fg";
  }
  return "?";
}

SymScoreSet sym_scores(const DyadDataset& dataset,
                       const Eigen::VectorXd& theta_hat) {
  const int n = dataset.n_nodes();
  const int p = dataset.n_regressors();
  const Eigen::MatrixXd& r = dataset.regressors();
  const Eigen::VectorXd& y = dataset.outcomes();

  // Residual-weighted regressors per ordered pair, in pair_index order.
  Eigen::MatrixXd s(dataset.n_dyads(), p);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const std::int64_t k = dataset.pair_index(i, j);
      const double eta = r.row(k).dot(theta_hat);
      if (!std::isfinite(eta) || eta > kLinearPredictorCap) {
        throw Error(errc::non_finite_likelihood,
                    "linear predictor " + std::to_string(eta) +
                        " exceeds exp() cap in score evaluation");
      }
      s.row(k) = (y[k] - std::exp(eta)) * r.row(k);
    }
  }

  SymScoreSet sym;
  sym.n_nodes = n;
  sym.t.resize(static_cast<std::int64_t>(n) * (n - 1) / 2, p);
  sym.g = Eigen::MatrixXd::Zero(n, p);
  sym.directed_outer_sum = Eigen::MatrixXd::Zero(p, p);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const auto sij = s.row(dataset.pair_index(i, j));
      const auto sji = s.row(dataset.pair_index(j, i));
      const Eigen::RowVectorXd tij = sij + sji;
      sym.t.row(sym.dyad_index(i, j)) = tij;
      sym.g.row(i) += tij;
      sym.g.row(j) += tij;
      sym.directed_outer_sum.noalias() += sij.transpose() * sij;
      sym.directed_outer_sum.noalias() += sji.transpose() * sji;
    }
  }
  return sym;
}

namespace {

double sigma1_scale(int n, Sigma1Denominator denom) {
  const double nn = static_cast<double>(n);
  const double d = (denom == Sigma1Denominator::printed)
                       ? nn * (nn - 1.0) * (nn - 1.0)
                       : nn * (nn - 1.0) * (nn - 2.0);
  return 0.25 * 2.0 / d;
}

}  // namespace

Eigen::MatrixXd sigma1_naive(const SymScoreSet& sym, Sigma1Denominator denom) {
  const int n = sym.n_nodes;
  const int p = static_cast<int>(sym.t.cols());
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(p, p);
  if (n < 3) return acc;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const auto tij = sym.t.row(sym.dyad_index(i, j));
      for (int k = j + 1; k < n; ++k) {
        const auto tik = sym.t.row(sym.dyad_index(i, k));
        const auto tjk = sym.t.row(sym.dyad_index(j, k));
        acc.noalias() += tij.transpose() * tik;
        acc.noalias() += tij.transpose() * tjk;
        acc.noalias() += tik.transpose() * tjk;
      }
    }
  }
  const Eigen::MatrixXd symmetrized = 0.5 * (acc + acc.transpose());
  return sigma1_scale(n, denom) * symmetrized;
}

Eigen::MatrixXd sigma1_fast(const SymScoreSet& sym, Sigma1Denominator denom) {
  const int n = sym.n_nodes;
  const int p = static_cast<int>(sym.t.cols());
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(p, p);
  if (n < 3) return acc;
  for (int i = 0; i < n; ++i) {
    acc.noalias() += sym.g.row(i).transpose() * sym.g.row(i);
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const auto tij = sym.t.row(sym.dyad_index(i, j));
      acc.noalias() -= tij.transpose() * tij;
    }
  }
  return sigma1_scale(n, denom) * (0.5 * acc);
}

Eigen::MatrixXd sigma23(const SymScoreSet& sym) {
  const int p = static_cast<int>(sym.t.cols());
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(p, p);
  for (std::int64_t d = 0; d < sym.t.rows(); ++d) {
    acc.noalias() += sym.t.row(d).transpose() * sym.t.row(d);
  }
  const double n = static_cast<double>(sym.n_nodes);
  return (0.25 * 2.0 / (n * (n - 1.0))) * acc;
}

const Eigen::VectorXd& VcovSet::se(Estimator e) const {
  switch (e) {
    case Estimator::huber: return se_huber;
    case Estimator::dyad: return se_dyad;
    case Estimator::fg: return se_fg;
  }
  return se_fg;
}

const Eigen::MatrixXd& VcovSet::vcov(Estimator e) const {
  switch (e) {
    case Estimator::huber: return vcov_huber;
    case Estimator::dyad: return vcov_dyad;
    case Estimator::fg: return vcov_fg;
  }
  return vcov_fg;
}

namespace {

Eigen::MatrixXd sandwich(const Eigen::MatrixXd& bread_inv,
                         const Eigen::MatrixXd& meat, double scale) {
  return scale * (bread_inv * meat * bread_inv.transpose());
}

bool is_requested(const std::vector<Estimator>& requested, Estimator e) {
  for (Estimator r : requested) {
    if (r == e) return true;
  }
  return false;
}

}  // namespace

VcovSet assemble_vcov(const FitResult& fit, const SymScoreSet& sym,
                      const VcovOptions& options) {
  const double n = static_cast<double>(sym.n_nodes);
  const double m = n * (n - 1.0);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(fit.gamma_hat);
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double ev_max = ev.maxCoeff();
  if (!(ev_max > 0.0) || ev.minCoeff() <= 1e-12 * ev_max) {
    throw Error(errc::singular_gamma,
                "gamma_hat is not positive definite (eigenvalue range [" +
                    std::to_string(ev.minCoeff()) + ", " +
                    std::to_string(ev_max) + "])");
  }
  const Eigen::MatrixXd gamma_inv = es.eigenvectors() *
                                    ev.cwiseInverse().asDiagonal() *
                                    es.eigenvectors().transpose();

  VcovSet out;
  out.requested = options.requested;
  out.sigma1_hat = sigma1_fast(sym, options.sigma1_denominator);
  out.sigma23_hat = sigma23(sym);

  // FG split into the two sandwich terms so that sigma1 == 0 collapses it
  // onto the dyad-clustered matrix bit for bit.
  out.vcov_fg =
      sandwich(gamma_inv, 4.0 * out.sigma1_hat, 1.0 / n) +
      sandwich(gamma_inv, out.sigma23_hat - 2.0 * out.sigma1_hat, 2.0 / m);
  out.vcov_dyad = sandwich(gamma_inv, out.sigma23_hat, 2.0 / m);
  // A = sum exp(r'theta) r r' = N(N-1) * gamma_hat for the Poisson family.
  out.vcov_huber = sandwich(gamma_inv, sym.directed_outer_sum, 1.0 / (m * m));

  auto fill_se = [&](Estimator e, const Eigen::MatrixXd& v,
                     Eigen::VectorXd& se) {
    if (!is_requested(options.requested, e)) return;
    const Eigen::VectorXd diag = v.diagonal();
    for (Eigen::Index k = 0; k < diag.size(); ++k) {
      if (!(diag[k] > 0.0)) {
        throw Error(errc::negative_variance_estimate,
                    std::string("estimator '") + estimator_name(e) +
                        "' produced a non-positive variance (" +
                        std::to_string(diag[k]) + ") for coefficient " +
                        std::to_string(k));
      }
    }
    se = diag.cwiseSqrt();
  };
  fill_se(Estimator::huber, out.vcov_huber, out.se_huber);
  fill_se(Estimator::dyad, out.vcov_dyad, out.se_dyad);
  fill_se(Estimator::fg, out.vcov_fg, out.se_fg);
  return out;
}

double normal_quantile_two_sided(double level) {
  boost::math::normal_distribution<double> standard_normal;
  return boost::math::quantile(standard_normal, 0.5 + level / 2.0);
}

std::vector<WaldInterval> wald_ci(const Eigen::VectorXd& theta_hat,
                                  const Eigen::VectorXd& se, double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw Error(errc::invalid_flag,
                "confidence level must lie in (0,1), got " +
                    std::to_string(level));
  }
  if (theta_hat.size() != se.size()) {
    throw Error(errc::invalid_flag, "estimate/se length mismatch");
  }
  const double z = normal_quantile_two_sided(level);
  std::vector<WaldInterval> out(static_cast<std::size_t>(theta_hat.size()));
  for (Eigen::Index k = 0; k < theta_hat.size(); ++k) {
    if (se[k] < 0.0) {
      throw Error(errc::invalid_flag, "negative standard error");
    }
    out[static_cast<std::size_t>(k)] = {theta_hat[k] - z * se[k],
                                        theta_hat[k] + z * se[k]};
  }
  return out;
}

}  // namespace dyadreg
