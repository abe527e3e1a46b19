#include "dyadreg/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

namespace dyadreg {

DyadDataset build_dataset(const std::vector<std::string>& node_labels,
                          const std::vector<DyadRecord>& records,
                          const std::vector<std::string>& regressor_names) {
  const int n = static_cast<int>(node_labels.size());
  if (n < 2) {
    throw Error(errc::incomplete_panel,
                "a dyadic panel needs at least 2 nodes, got " +
                    std::to_string(n));
  }

  std::unordered_map<std::string, int> index_of;
  index_of.reserve(node_labels.size());
  for (int i = 0; i < n; ++i) {
    if (!index_of.emplace(node_labels[i], i).second) {
      throw Error(errc::duplicate_label,
                  "node label '" + node_labels[i] + "' appears twice");
    }
  }

  const int p = static_cast<int>(regressor_names.size());
  const std::int64_t m = static_cast<std::int64_t>(n) * (n - 1);
  if (static_cast<std::int64_t>(records.size()) != m) {
    throw Error(errc::incomplete_panel,
                "expected " + std::to_string(m) + " ordered-pair records for N=" +
                    std::to_string(n) + ", got " + std::to_string(records.size()));
  }

  DyadDataset ds;
  ds.n_nodes_ = n;
  ds.node_labels_ = node_labels;
  ds.regressor_names_ = regressor_names;
  ds.y_.resize(m);
  ds.r_.resize(m, p);

  std::vector<char> seen(static_cast<std::size_t>(m), 0);
  for (const DyadRecord& rec : records) {
    auto ei = index_of.find(rec.ego);
    if (ei == index_of.end()) {
      throw Error(errc::unknown_label, "ego label '" + rec.ego + "'");
    }
    auto ai = index_of.find(rec.alter);
    if (ai == index_of.end()) {
      throw Error(errc::unknown_label, "alter label '" + rec.alter + "'");
    }
    const int i = ei->second;
    const int j = ai->second;
    if (i == j) {
      throw Error(errc::self_loop, "record (" + rec.ego + "," + rec.alter + ")");
    }
    const std::int64_t k = ds.pair_index(i, j);
    if (seen[static_cast<std::size_t>(k)]) {
      throw Error(errc::duplicate_dyad,
                  "record (" + rec.ego + "," + rec.alter + ") supplied twice");
    }
    seen[static_cast<std::size_t>(k)] = 1;

    if (!std::isfinite(rec.y)) {
      throw Error(errc::non_finite_value,
                  "outcome for (" + rec.ego + "," + rec.alter + ")");
    }
    if (rec.y < 0.0) {
      throw Error(errc::negative_outcome,
                  "outcome " + std::to_string(rec.y) + " for (" + rec.ego + "," +
                      rec.alter + ")");
    }
    if (static_cast<int>(rec.r.size()) != p) {
      throw Error(errc::non_finite_value,
                  "regressor vector for (" + rec.ego + "," + rec.alter +
                      ") has length " + std::to_string(rec.r.size()) +
                      ", expected " + std::to_string(p));
    }
    ds.y_[k] = rec.y;
    for (int c = 0; c < p; ++c) {
      if (!std::isfinite(rec.r[static_cast<std::size_t>(c)])) {
        throw Error(errc::non_finite_value,
                    "regressor '" + regressor_names[static_cast<std::size_t>(c)] +
                        "' for (" + rec.ego + "," + rec.alter + ")");
      }
      ds.r_(k, c) = rec.r[static_cast<std::size_t>(c)];
    }
  }

  // record count == m and no duplicates already implies completeness, but a
  // direct scan gives the missing pair by name on the error path
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (!seen[static_cast<std::size_t>(ds.pair_index(i, j))]) {
        throw Error(errc::incomplete_panel,
                    "missing record (" + node_labels[i] + "," + node_labels[j] + ")");
      }
    }
  }
  return ds;
}

DyadDataset expand_node_covariates(const DyadDataset& dataset,
                                   const NodeTable& nodes,
                                   const std::vector<std::string>& ego_cols,
                                   const std::vector<std::string>& alter_cols) {
  if (ego_cols.empty() && alter_cols.empty()) return dataset;

  std::unordered_map<std::string, int> row_of;
  for (int r = 0; r < static_cast<int>(nodes.labels.size()); ++r) {
    row_of.emplace(nodes.labels[static_cast<std::size_t>(r)], r);
  }
  auto column_index = [&nodes](const std::string& name) {
    auto it = std::find(nodes.columns.begin(), nodes.columns.end(), name);
    if (it == nodes.columns.end()) {
      throw Error(errc::unknown_column, "node column '" + name + "'");
    }
    return static_cast<int>(it - nodes.columns.begin());
  };

  std::vector<int> ego_idx, alter_idx;
  for (const auto& c : ego_cols) ego_idx.push_back(column_index(c));
  for (const auto& c : alter_cols) alter_idx.push_back(column_index(c));

  const int n = dataset.n_nodes();
  std::vector<int> node_row(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    auto it = row_of.find(dataset.node_labels()[static_cast<std::size_t>(i)]);
    if (it == row_of.end()) {
      throw Error(errc::missing_node_row,
                  "no node-table row for label '" +
                      dataset.node_labels()[static_cast<std::size_t>(i)] + "'");
    }
    node_row[static_cast<std::size_t>(i)] = it->second;
  }

  const int p_old = dataset.n_regressors();
  std::vector<std::string> names = dataset.regressor_names();
  for (const auto& c : ego_cols) names.push_back(c + "_ego");
  for (const auto& c : alter_cols) names.push_back(c + "_alter");

  std::vector<DyadRecord> records;
  records.reserve(static_cast<std::size_t>(dataset.n_dyads()));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const std::int64_t k = dataset.pair_index(i, j);
      DyadRecord rec;
      rec.ego = dataset.node_labels()[static_cast<std::size_t>(i)];
      rec.alter = dataset.node_labels()[static_cast<std::size_t>(j)];
      rec.y = dataset.outcomes()[k];
      rec.r.resize(names.size());
      for (int c = 0; c < p_old; ++c) {
        rec.r[static_cast<std::size_t>(c)] = dataset.regressors()(k, c);
      }
      int out = p_old;
      for (int c : ego_idx) {
        rec.r[static_cast<std::size_t>(out++)] =
            nodes.values(node_row[static_cast<std::size_t>(i)], c);
      }
      for (int c : alter_idx) {
        rec.r[static_cast<std::size_t>(out++)] =
            nodes.values(node_row[static_cast<std::size_t>(j)], c);
      }
      records.push_back(std::move(rec));
    }
  }
  return build_dataset(dataset.node_labels(), records, names);
}

}  // namespace dyadreg
