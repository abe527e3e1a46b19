#include "dyadreg/report.hpp"

#include <nlohmann/json.hpp>
#include <sstream>

#include "dyadreg/io.hpp"

namespace dyadreg {

namespace {

using json = nlohmann::ordered_json;

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

const char* denominator_name(Sigma1Denominator d) {
  return d == Sigma1Denominator::printed ? "printed" : "n-2";
}

}  // namespace

json fit_report_json(const DyadDataset& dataset, const FitResult& fit,
                     const VcovSet& vcov, double level) {
  json report;
  report["schema"] = "dyadreg.fit_report.v1";
  report["dataset"] = {{"n_nodes", dataset.n_nodes()},
                       {"n_dyads", dataset.n_dyads()}};
  report["regressors"] = dataset.regressor_names();
  report["level"] = level;
  json estimators = json::array();
  for (Estimator e : vcov.requested) estimators.push_back(estimator_name(e));
  report["estimators"] = std::move(estimators);

  json coefficients = json::array();
  for (int k = 0; k < dataset.n_regressors(); ++k) {
    json coef;
    coef["name"] = dataset.regressor_names()[static_cast<std::size_t>(k)];
    coef["estimate"] = fit.theta_hat[k];
    json se, ci;
    for (Estimator e : vcov.requested) {
      const Eigen::VectorXd& s = vcov.se(e);
      const auto intervals = wald_ci(fit.theta_hat, s, level);
      se[estimator_name(e)] = s[k];
      ci[estimator_name(e)] = {
          {"lower", intervals[static_cast<std::size_t>(k)].lower},
          {"upper", intervals[static_cast<std::size_t>(k)].upper}};
    }
    coef["se"] = std::move(se);
    coef["ci"] = std::move(ci);
    coefficients.push_back(std::move(coef));
  }
  report["coefficients"] = std::move(coefficients);

  report["convergence"] = {{"converged", fit.converged},
                           {"iterations", fit.iterations},
                           {"score_norm", fit.final_score_norm},
                           {"loglik", fit.loglik_at_optimum}};

  json vcov_block;
  for (Estimator e : vcov.requested) {
    vcov_block[estimator_name(e)] = matrix_to_json(vcov.vcov(e));
  }
  report["vcov"] = std::move(vcov_block);

  json warnings = json::array();
  for (const auto& w : fit.warnings) warnings.push_back(w);
  for (const auto& w : vcov.warnings) warnings.push_back(w);
  report["warnings"] = std::move(warnings);
  return report;
}

json coverage_report_json(const CoverageReport& report) {
  json out;
  out["schema"] = "dyadreg.coverage_report.v1";

  json theta = json::array();
  for (Eigen::Index k = 0; k < report.config.theta_true.size(); ++k) {
    theta.push_back(report.config.theta_true[k]);
  }
  json estimators = json::array();
  for (Estimator e : report.config.estimators) {
    estimators.push_back(estimator_name(e));
  }
  out["config"] = {
      {"n_nodes", report.config.n_nodes},
      {"theta_true", std::move(theta)},
      {"sigma", report.config.sigma},
      {"sigma_a", report.config.sigma_a},
      {"n_reps", report.config.n_reps},
      {"nominal_level", report.config.nominal_level},
      {"master_seed", report.config.master_seed},
      {"estimators", std::move(estimators)},
      {"sigma1_denominator", denominator_name(report.config.sigma1_denominator)},
  };

  json parameters = json::array();
  for (std::size_t k = 0; k < report.parameter_names.size(); ++k) {
    json param;
    param["name"] = report.parameter_names[k];
    param["true_value"] = report.config.theta_true[static_cast<Eigen::Index>(k)];
    param["estimate_mean"] = report.estimate_mean[k];
    param["estimate_sd"] = report.estimate_sd[k];
    json coverage;
    for (const EstimatorCoverage& ec : report.per_estimator) {
      coverage[estimator_name(ec.estimator)] = {{"proportion", ec.coverage[k]},
                                                {"mc_se", ec.mc_se[k]}};
    }
    param["coverage"] = std::move(coverage);
    parameters.push_back(std::move(param));
  }
  out["parameters"] = std::move(parameters);

  json failures = json::array();
  for (const auto& [rep, reason] : report.failures) {
    failures.push_back({{"rep", rep}, {"reason", reason}});
  }
  out["replications"] = {{"requested", report.config.n_reps},
                         {"included", report.included},
                         {"failed", static_cast<int>(report.failures.size())},
                         {"failures", std::move(failures)}};

  json notes = json::array();
  for (const auto& note : report.notes) notes.push_back(note);
  out["notes"] = std::move(notes);
  return out;
}

std::string fit_report_csv(const DyadDataset& dataset, const FitResult& fit,
                           const VcovSet& vcov, double level) {
  std::ostringstream out;
  out << "name,estimate,estimator,se,ci_lower,ci_upper\n";
  for (Estimator e : vcov.requested) {
    const Eigen::VectorXd& se = vcov.se(e);
    const auto intervals = wald_ci(fit.theta_hat, se, level);
    for (int k = 0; k < dataset.n_regressors(); ++k) {
      out << dataset.regressor_names()[static_cast<std::size_t>(k)] << ','
          << format_double(fit.theta_hat[k]) << ',' << estimator_name(e) << ','
          << format_double(se[k]) << ','
          << format_double(intervals[static_cast<std::size_t>(k)].lower) << ','
          << format_double(intervals[static_cast<std::size_t>(k)].upper) << '\n';
    }
  }
  return out.str();
}

std::string coverage_report_csv(const CoverageReport& report) {
  std::ostringstream out;
  out << "parameter,true_value,estimator,coverage,mc_se,estimate_mean,"
         "estimate_sd,included,requested\n";
  for (const EstimatorCoverage& ec : report.per_estimator) {
    for (std::size_t k = 0; k < report.parameter_names.size(); ++k) {
      out << report.parameter_names[k] << ','
          << format_double(
                 report.config.theta_true[static_cast<Eigen::Index>(k)])
          << ',' << estimator_name(ec.estimator) << ','
          << format_double(ec.coverage[k]) << ',' << format_double(ec.mc_se[k])
          << ',' << format_double(report.estimate_mean[k]) << ','
          << format_double(report.estimate_sd[k]) << ',' << report.included
          << ',' << report.config.n_reps << '\n';
    }
  }
  return out.str();
}

}  // namespace dyadreg
