#include "dyadreg/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace dyadreg {

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string::size_type start = 0;
  for (;;) {
    auto comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  // tolerate trailing \r from CRLF files
  if (!fields.empty() && !fields.back().empty() && fields.back().back() == '\r') {
    fields.back().pop_back();
  }
  return fields;
}

double parse_number(const std::string& field, const std::string& column,
                    long row) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc{} || res.ptr != last || field.empty()) {
    throw Error(errc::parse_error, "row " + std::to_string(row) + ", column '" +
                                       column + "': cannot parse '" + field +
                                       "' as a number");
  }
  return value;
}

int require_column(const std::vector<std::string>& header,
                   const std::string& name, const std::string& path) {
  auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) {
    throw Error(errc::parse_error,
                "row 1: no column named '" + name + "' in " + path);
  }
  return static_cast<int>(it - header.begin());
}

std::vector<std::string> read_header(std::ifstream& in, const std::string& path) {
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(errc::parse_error, "empty file or missing header row in " + path);
  }
  return split_csv_line(line);
}

}  // namespace

DyadDataset load_dyads_csv(const std::string& path,
                           const std::string& outcome_col,
                           const std::vector<std::string>& regressor_cols,
                           const std::string& ego_col,
                           const std::string& alter_col, bool intercept) {
  std::ifstream in(path);
  if (!in) {
    throw Error(errc::parse_error, "cannot open '" + path + "'");
  }
  const auto header = read_header(in, path);
  const int ego_idx = require_column(header, ego_col, path);
  const int alter_idx = require_column(header, alter_col, path);
  const int y_idx = require_column(header, outcome_col, path);
  std::vector<int> r_idx;
  for (const auto& c : regressor_cols) r_idx.push_back(require_column(header, c, path));

  std::vector<std::string> labels;
  std::vector<DyadRecord> records;
  auto note_label = [&labels](const std::string& l) {
    if (std::find(labels.begin(), labels.end(), l) == labels.end()) {
      labels.push_back(l);
    }
  };

  std::string line;
  long row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      throw Error(errc::parse_error,
                  "row " + std::to_string(row) + ": expected " +
                      std::to_string(header.size()) + " fields, got " +
                      std::to_string(fields.size()));
    }
    DyadRecord rec;
    rec.ego = fields[static_cast<std::size_t>(ego_idx)];
    rec.alter = fields[static_cast<std::size_t>(alter_idx)];
    rec.y = parse_number(fields[static_cast<std::size_t>(y_idx)], outcome_col, row);
    rec.r.reserve(regressor_cols.size() + (intercept ? 1 : 0));
    if (intercept) rec.r.push_back(1.0);
    for (std::size_t c = 0; c < r_idx.size(); ++c) {
      rec.r.push_back(parse_number(
          fields[static_cast<std::size_t>(r_idx[c])], regressor_cols[c], row));
    }
    note_label(rec.ego);
    note_label(rec.alter);
    records.push_back(std::move(rec));
  }

  std::vector<std::string> names;
  if (intercept) names.push_back("intercept");
  names.insert(names.end(), regressor_cols.begin(), regressor_cols.end());
  return build_dataset(labels, records, names);
}

void write_dyads_csv(const DyadDataset& dataset, const std::string& path,
                     const std::string& ego_col, const std::string& alter_col,
                     const std::string& outcome_col) {
  std::ofstream out(path);
  if (!out) {
    throw Error(errc::parse_error, "cannot open '" + path + "' for writing");
  }
  out << ego_col << ',' << alter_col << ',' << outcome_col;
  for (const auto& name : dataset.regressor_names()) out << ',' << name;
  out << '\n';
  const int n = dataset.n_nodes();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const std::int64_t k = dataset.pair_index(i, j);
      out << dataset.node_labels()[static_cast<std::size_t>(i)] << ','
          << dataset.node_labels()[static_cast<std::size_t>(j)] << ','
          << format_double(dataset.outcomes()[k]);
      for (int c = 0; c < dataset.n_regressors(); ++c) {
        out << ',' << format_double(dataset.regressors()(k, c));
      }
      out << '\n';
    }
  }
}

NodeTable load_nodes_csv(const std::string& path, const std::string& label_col) {
  std::ifstream in(path);
  if (!in) {
    throw Error(errc::parse_error, "cannot open '" + path + "'");
  }
  const auto header = read_header(in, path);
  const int label_idx = require_column(header, label_col, path);

  NodeTable table;
  std::vector<int> value_idx;
  for (int c = 0; c < static_cast<int>(header.size()); ++c) {
    if (c == label_idx) continue;
    table.columns.push_back(header[static_cast<std::size_t>(c)]);
    value_idx.push_back(c);
  }

  std::vector<std::vector<double>> rows;
  std::string line;
  long row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      throw Error(errc::parse_error,
                  "row " + std::to_string(row) + ": expected " +
                      std::to_string(header.size()) + " fields, got " +
                      std::to_string(fields.size()));
    }
    const std::string& label = fields[static_cast<std::size_t>(label_idx)];
    if (std::find(table.labels.begin(), table.labels.end(), label) !=
        table.labels.end()) {
      throw Error(errc::duplicate_label,
                  "row " + std::to_string(row) + ": label '" + label +
                      "' appears twice");
    }
    table.labels.push_back(label);
    std::vector<double> values;
    values.reserve(value_idx.size());
    for (std::size_t c = 0; c < value_idx.size(); ++c) {
      values.push_back(parse_number(
          fields[static_cast<std::size_t>(value_idx[c])], table.columns[c], row));
    }
    rows.push_back(std::move(values));
  }

  table.values.resize(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(table.columns.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      table.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          rows[r][c];
    }
  }
  return table;
}

}  // namespace dyadreg
