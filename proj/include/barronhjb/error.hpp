#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace barronhjb {

enum class ErrorCode {
  kDimensionMismatch,
  kInvalidArgument,
  kNotSymmetricPositiveDefinite,
  kZeroControlGain,
  kOrderTooLow,
  kNotContractive,
  kBudgetExceeded,
  kInitialControlTooLarge,
  kDiscountTooSmall,
  kZeroFunction,
  kUnsupportedOrder,
  kSimulationFailure,
  kParse,
  kIo,
};

/// Stable machine-readable name, used in error JSON.
std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace barronhjb
