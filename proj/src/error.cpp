#include "randroots/error.hpp"

namespace randroots {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DegreeTooLarge: return "DegreeTooLarge";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::DegenerateResultant: return "DegenerateResultant";
    case ErrorCode::NewtonDivergence: return "NewtonDivergence";
    case ErrorCode::OddDegree: return "OddDegree";
    case ErrorCode::NotFullySplit: return "NotFullySplit";
    case ErrorCode::DegreeDrop: return "DegreeDrop";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::TooManyFlaggedTrials: return "TooManyFlaggedTrials";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace randroots
