#pragma once

#include <stdexcept>
#include <string>

namespace zsum {

/// Error categories raised by the library.
enum class errc {
  bad_factor,
  chain_violation,
  rank_mismatch,
  group_mismatch,
  out_of_range,
  cap_exceeded,
  budget_exceeded,
  not_a_subsequence,
  too_many_variables,
  window_violation,
  not_a_p_group,
  hypothesis_violation,
  premise_not_met,
  precondition_violation,
  inadmissible_group,
  rejection_budget_exhausted,
  gcd_violation,
  bad_j,
  bad_window,
  parse_error,
  cache_corrupt,
};

const char* errc_name(errc code) noexcept;

/** Exception type carrying an errc alongside the human-readable message. */
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) {
  throw error(code, message);
}

}  // namespace zsum
