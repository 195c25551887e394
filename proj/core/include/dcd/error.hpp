#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dcd {

enum class ErrorCode {
  InvalidArgument,
  NotPrimePower,
  TooLarge,
  InverseOfZero,
  LevelOutOfRange,
  UnbalancedColumn,
  NonDivisibleGrid,
  AllZeroSpec,
  StrengthUnsupported,
  NotSquareRunSize,
  ParseError,
  StrengthMismatch,
  DimensionMismatch,
  NotBlockForm,
  CellNotPermutation,
  PreconditionFailed,
  NotStrength3,
  UTooSmall,
  OmegaExceedsQ,
  RunSizeNotDivisible,
  InfeasibleParameters,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dcd
