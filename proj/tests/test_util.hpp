#ifndef DYADREG_TEST_UTIL_HPP
#define DYADREG_TEST_UTIL_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "dyadreg/dataset.hpp"

namespace testutil {

inline std::vector<std::string> make_labels(int n) {
  std::vector<std::string> labels(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) labels[static_cast<std::size_t>(i)] = "n" + std::to_string(i);
  return labels;
}

// Complete random panel: regressors U[-1,1], outcomes lognormal-scale
// positive values (a few exact zeros mixed in when allow_zeros is set).
inline dyadreg::DyadDataset random_dataset(int n, int p, std::uint64_t seed,
                                           bool intercept = false,
                                           bool allow_zeros = false) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::normal_distribution<double> normal(0.0, 0.5);
  const auto labels = make_labels(n);
  std::vector<dyadreg::DyadRecord> records;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      dyadreg::DyadRecord rec;
      rec.ego = labels[static_cast<std::size_t>(i)];
      rec.alter = labels[static_cast<std::size_t>(j)];
      rec.r.resize(static_cast<std::size_t>(p));
      for (int k = 0; k < p; ++k) {
        rec.r[static_cast<std::size_t>(k)] = (intercept && k == 0) ? 1.0 : unif(rng);
      }
      rec.y = std::exp(normal(rng));
      if (allow_zeros && unif(rng) > 0.6) rec.y = 0.0;
      records.push_back(std::move(rec));
    }
  }
  std::vector<std::string> names(static_cast<std::size_t>(p));
  for (int k = 0; k < p; ++k) names[static_cast<std::size_t>(k)] = "x" + std::to_string(k);
  if (intercept) names[0] = "intercept";
  return dyadreg::build_dataset(labels, records, names);
}

inline Eigen::VectorXd random_theta(int p, std::uint64_t seed, double scale = 0.5) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-scale, scale);
  Eigen::VectorXd theta(p);
  for (int k = 0; k < p; ++k) theta[k] = unif(rng);
  return theta;
}

// Same records, node labels supplied in permuted order: internal indices are
// relabeled while the observed panel is value-identical.
inline dyadreg::DyadDataset relabeled_copy(const dyadreg::DyadDataset& ds,
                                           std::uint64_t seed) {
  const int n = ds.n_nodes();
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(perm.begin(), perm.end(), rng);

  const auto& labels = ds.node_labels();
  std::vector<std::string> permuted_labels(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    permuted_labels[static_cast<std::size_t>(i)] = labels[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
  }

  std::vector<dyadreg::DyadRecord> records;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      dyadreg::DyadRecord rec;
      rec.ego = labels[static_cast<std::size_t>(i)];
      rec.alter = labels[static_cast<std::size_t>(j)];
      rec.y = ds.outcome(i, j);
      const auto row = ds.regressors().row(ds.pair_index(i, j));
      rec.r.assign(row.begin(), row.end());
      records.push_back(std::move(rec));
    }
  }
  return dyadreg::build_dataset(permuted_labels, records, ds.regressor_names());
}

inline double rel_frobenius(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const double denom = std::max(1e-300, std::max(a.norm(), b.norm()));
  return (a - b).norm() / denom;
}

}  // namespace testutil

#endif  // DYADREG_TEST_UTIL_HPP
