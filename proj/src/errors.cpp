#include "dyadreg/errors.hpp"

namespace dyadreg {

const char* errc_name(errc code) {
  switch (code) {
    case errc::unknown_label: return "UnknownLabel";
    case errc::duplicate_dyad: return "DuplicateDyad";
    case errc::self_loop: return "SelfLoop";
    case errc::incomplete_panel: return "IncompletePanel";
    case errc::negative_outcome: return "NegativeOutcome";
    case errc::non_finite_value: return "NonFiniteValue";
    case errc::missing_node_row: return "MissingNodeRow";
    case errc::unknown_column: return "UnknownColumn";
    case errc::non_finite_likelihood: return "NonFiniteLikelihood";
    case errc::all_zero_outcomes: return "AllZeroOutcomes";
    case errc::singular_gamma: return "SingularGamma";
    case errc::negative_variance_estimate: return "NegativeVarianceEstimate";
    case errc::parse_error: return "ParseError";
    case errc::duplicate_label: return "DuplicateLabel";
    case errc::invalid_flag: return "InvalidFlag";
  }
  return "UnknownError";
}

}  // namespace dyadreg
