#ifndef DYADREG_ERRORS_HPP
#define DYADREG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dyadreg {

// Every recoverable failure in the library carries one of these codes so
// callers (and the CLI exit-code mapping) can dispatch without string
// matching.
enum class errc {
  unknown_label,
  duplicate_dyad,
  self_loop,
  incomplete_panel,
  negative_outcome,
  non_finite_value,
  missing_node_row,
  unknown_column,
  non_finite_likelihood,
  all_zero_outcomes,
  singular_gamma,
  negative_variance_estimate,
  parse_error,
  duplicate_label,
  invalid_flag,
};

const char* errc_name(errc code);

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  errc code() const { return code_; }

 private:
  errc code_;
};

}  // namespace dyadreg

#endif  // DYADREG_ERRORS_HPP
