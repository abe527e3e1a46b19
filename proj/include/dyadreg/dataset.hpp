#ifndef DYADREG_DATASET_HPP
#define DYADREG_DATASET_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "dyadreg/errors.hpp"

namespace dyadreg {

// One directed observation as supplied by a loader or the simulator.
struct DyadRecord {
  std::string ego;
  std::string alter;
  double y = 0.0;
  std::vector<double> r;
};

// Complete directed-dyad panel over N nodes: outcome y(i,j) and a p-vector
// of regressors for every ordered pair i != j.  Immutable after construction
// and safe to read from multiple threads.
//
// Records are stored densely in lexicographic (i,j) order; pair_index gives
// O(1) lookup of an ordered pair.
class DyadDataset {
 public:
  int n_nodes() const { return n_nodes_; }
  std::int64_t n_dyads() const { return y_.size(); }  // N(N-1)
  int n_regressors() const { return static_cast<int>(r_.cols()); }

  const std::vector<std::string>& node_labels() const { return node_labels_; }
  const std::vector<std::string>& regressor_names() const {
    return regressor_names_;
  }

  // Row index of ordered pair (i,j), i != j, in lexicographic order.
  std::int64_t pair_index(int i, int j) const {
    return static_cast<std::int64_t>(i) * (n_nodes_ - 1) + j - (j > i ? 1 : 0);
  }

  double outcome(int i, int j) const { return y_[pair_index(i, j)]; }
  const Eigen::VectorXd& outcomes() const { return y_; }
  // M x p, one row per ordered pair in lexicographic order.
  const Eigen::MatrixXd& regressors() const { return r_; }

  friend DyadDataset build_dataset(const std::vector<std::string>& node_labels,
                                   const std::vector<DyadRecord>& records,
                                   const std::vector<std::string>& regressor_names);

 private:
  DyadDataset() = default;

  int n_nodes_ = 0;
  std::vector<std::string> node_labels_;
  std::vector<std::string> regressor_names_;
  Eigen::VectorXd y_;
  Eigen::MatrixXd r_;
};

// Validates and assembles a complete panel.  Throws Error with codes
// UnknownLabel, SelfLoop, DuplicateDyad, IncompletePanel, NegativeOutcome,
// NonFiniteValue.
DyadDataset build_dataset(const std::vector<std::string>& node_labels,
                          const std::vector<DyadRecord>& records,
                          const std::vector<std::string>& regressor_names);

// Per-node numeric attribute table keyed by label (one row per node).
struct NodeTable {
  std::vector<std::string> labels;
  std::vector<std::string> columns;
  Eigen::MatrixXd values;  // labels.size() x columns.size()
};

// Appends the ego's values of ego_cols and the alter's values of alter_cols
// (in that order) to every dyad's regressor vector; new columns are named
// "<col>_ego" / "<col>_alter".  Throws MissingNodeRow / UnknownColumn.
DyadDataset expand_node_covariates(const DyadDataset& dataset,
                                   const NodeTable& nodes,
                                   const std::vector<std::string>& ego_cols,
                                   const std::vector<std::string>& alter_cols);

}  // namespace dyadreg

#endif  // DYADREG_DATASET_HPP
