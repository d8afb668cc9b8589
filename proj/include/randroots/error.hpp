#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace randroots {

enum class ErrorCode {
  InvalidArgument,
  DegreeTooLarge,
  DimensionMismatch,
  DegreeMismatch,
  ZeroPolynomial,
  PrecisionExhausted,
  DegenerateResultant,
  NewtonDivergence,
  OddDegree,
  NotFullySplit,
  DegreeDrop,
  NonConvergence,
  CoincidentPoints,
  TooManyFlaggedTrials,
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// the harness can tell resamplable numerical events from real bugs.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace randroots
