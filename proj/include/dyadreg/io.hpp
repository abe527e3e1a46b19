#ifndef DYADREG_IO_HPP
#define DYADREG_IO_HPP

#include <string>
#include <vector>

#include "dyadreg/dataset.hpp"

namespace dyadreg {

// CSV dialect: comma-separated, UTF-8, mandatory header row, '.' decimal
// separator, scientific notation accepted, no quoting.

// Loads a complete directed-dyad panel.  ego_col/alter_col hold node labels;
// node indices follow first appearance.  With intercept, a leading all-ones
// regressor named "intercept" is prepended.  Throws ParseError (with row
// number) plus all build_dataset errors.
DyadDataset load_dyads_csv(const std::string& path,
                           const std::string& outcome_col,
                           const std::vector<std::string>& regressor_cols,
                           const std::string& ego_col,
                           const std::string& alter_col,
                           bool intercept);

// Writes the panel back out (lexicographic pair order, round-trip lossless
// number formatting).  Reloading with the same column names and
// intercept=false reproduces the dataset exactly.
void write_dyads_csv(const DyadDataset& dataset, const std::string& path,
                     const std::string& ego_col = "ego",
                     const std::string& alter_col = "alter",
                     const std::string& outcome_col = "y");

// Loads a per-node attribute table; every column except label_col must be
// numeric.  Throws DuplicateLabel and ParseError.
NodeTable load_nodes_csv(const std::string& path, const std::string& label_col);

// Shortest representation that parses back to the identical double.
std::string format_double(double v);

}  // namespace dyadreg

#endif  // DYADREG_IO_HPP
