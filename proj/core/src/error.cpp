#include "dcd/error.hpp"

namespace dcd {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotPrimePower: return "NotPrimePower";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InverseOfZero: return "InverseOfZero";
    case ErrorCode::LevelOutOfRange: return "LevelOutOfRange";
    case ErrorCode::UnbalancedColumn: return "UnbalancedColumn";
    case ErrorCode::NonDivisibleGrid: return "NonDivisibleGrid";
    case ErrorCode::AllZeroSpec: return "AllZeroSpec";
    case ErrorCode::StrengthUnsupported: return "StrengthUnsupported";
    case ErrorCode::NotSquareRunSize: return "NotSquareRunSize";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::StrengthMismatch: return "StrengthMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotBlockForm: return "NotBlockForm";
    case ErrorCode::CellNotPermutation: return "CellNotPermutation";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::NotStrength3: return "NotStrength3";
    case ErrorCode::UTooSmall: return "UTooSmall";
    case ErrorCode::OmegaExceedsQ: return "OmegaExceedsQ";
    case ErrorCode::RunSizeNotDivisible: return "RunSizeNotDivisible";
    case ErrorCode::InfeasibleParameters: return "InfeasibleParameters";
  }
  return "Unknown";
}

}  // namespace dcd
