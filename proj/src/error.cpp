#include "barronhjb/error.hpp"

namespace barronhjb {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kDimensionMismatch:
      return "DimensionMismatch";
    case ErrorCode::kInvalidArgument:
      return "InvalidArgument";
    case ErrorCode::kNotSymmetricPositiveDefinite:
      return "NotSymmetricPositiveDefinite";
    case ErrorCode::kZeroControlGain:
      return "ZeroControlGain";
    case ErrorCode::kOrderTooLow:
      return "OrderTooLow";
    case ErrorCode::kNotContractive:
      return "NotContractive";
    case ErrorCode::kBudgetExceeded:
      return "BudgetExceeded";
    case ErrorCode::kInitialControlTooLarge:
      return "InitialControlTooLarge";
    case ErrorCode::kDiscountTooSmall:
      return "DiscountTooSmall";
    case ErrorCode::kZeroFunction:
      return "ZeroFunction";
    case ErrorCode::kUnsupportedOrder:
      return "UnsupportedOrder";
    case ErrorCode::kSimulationFailure:
      return "SimulationFailure";
    case ErrorCode::kParse:
      return "ParseError";
    case ErrorCode::kIo:
      return "IoError";
  }
  return "Unknown";
}

}  // namespace barronhjb
