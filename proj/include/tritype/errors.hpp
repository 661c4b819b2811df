#pragma once

#include <stdexcept>
#include <string>

namespace tritype {

enum class errc {
  division_by_zero,
  field_mismatch,
  singular,
  no_solution,
  not_in_kh,
  too_large,
  generation_check_failed,
  localization_failed,
  not_in_stabilizer,
  bad_representative,
  non_integral,
  unknown_fixture,
  validation_failed,
  mismatch,
  parse_error,
  internal
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::division_by_zero: return "DIVISION_BY_ZERO";
    case errc::field_mismatch: return "FIELD_MISMATCH";
    case errc::singular: return "SINGULAR";
    case errc::no_solution: return "NO_SOLUTION";
    case errc::not_in_kh: return "NOT_IN_KH";
    case errc::too_large: return "TOO_LARGE";
    case errc::generation_check_failed: return "GENERATION_CHECK_FAILED";
    case errc::localization_failed: return "LOCALIZATION_FAILED";
    case errc::not_in_stabilizer: return "NOT_IN_STABILIZER";
    case errc::bad_representative: return "BAD_REPRESENTATIVE";
    case errc::non_integral: return "NON_INTEGRAL";
    case errc::unknown_fixture: return "UNKNOWN_FIXTURE";
    case errc::validation_failed: return "VALIDATION_FAILED";
    case errc::mismatch: return "MISMATCH";
    case errc::parse_error: return "PARSE_ERROR";
    case errc::internal: return "INTERNAL";
  }
  return "UNKNOWN";
}

/// Exception carrying a machine-readable code plus a human message.
class error : public std::runtime_error {
 public:
  error(errc c, const std::string& msg)
      : std::runtime_error(std::string(errc_name(c)) + ": " + msg), code_(c) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc c, const std::string& msg) { throw error(c, msg); }

inline void require(bool cond, errc c, const std::string& msg) {
  if (!cond) fail(c, msg);
}

} // namespace tritype
