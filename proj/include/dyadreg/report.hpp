#ifndef DYADREG_REPORT_HPP
#define DYADREG_REPORT_HPP

#include <nlohmann/json_fwd.hpp>
#include <string>

#include "dyadreg/dataset.hpp"
#include "dyadreg/fit.hpp"
#include "dyadreg/simulate.hpp"
#include "dyadreg/vcov.hpp"

namespace dyadreg {

// JSON is the canonical report format; both builders emit a stable key
// order so identical inputs serialize byte-identically.
nlohmann::ordered_json fit_report_json(const DyadDataset& dataset,
                                       const FitResult& fit,
                                       const VcovSet& vcov, double level);

nlohmann::ordered_json coverage_report_json(const CoverageReport& report);

// CSV flattening: one row per coefficient (fit) / parameter (coverage) per
// estimator.
std::string fit_report_csv(const DyadDataset& dataset, const FitResult& fit,
                           const VcovSet& vcov, double level);

std::string coverage_report_csv(const CoverageReport& report);

}  // namespace dyadreg

#endif  // DYADREG_REPORT_HPP
