#pragma once

#include <stdexcept>
#include <string>

namespace streamcode {

enum class ErrorCode {
  invalid_argument = 1,
  dimension_mismatch,
  field_too_small,
  parse_error,
  exhausted,
  budget_exceeded,
};

/// Every failure raised by the core carries one of the codes above; the C API
/// maps them onto its status enum.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace streamcode
