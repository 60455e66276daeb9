#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qci {

enum class ErrorCode {
  NotPrime,
  InvalidOrder,
  SyntaxError,
  NotInField,
  DivisionByZero,
  FieldMismatch,
  BadDiagonal,
  BadReciprocal,
  BadExponent,
  TooLarge,
  NotFrobenius,
  TooManyGenerators,
  NotCompatible,
  NotInvolution,
  RegimeHypothesisFailed,
  WitnessInvalid,
  InternalCrossCheckFailed,
  CrossCheckDisagreement,
  SemanticError,
  InvalidInput,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above; the
/// CLI maps codes onto exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code), detail_(detail) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

  /// Internal errors indicate a bug (two independent computations disagreed),
  /// not bad input.
  bool is_internal() const noexcept {
    return code_ == ErrorCode::InternalCrossCheckFailed || code_ == ErrorCode::CrossCheckDisagreement;
  }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace qci
