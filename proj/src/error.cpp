#include "setnim/error.hpp"

namespace setnim {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::CoverageGap: return "CoverageGap";
    case ErrorCode::UnknownId: return "UnknownId";
    case ErrorCode::BadParameters: return "BadParameters";
    case ErrorCode::FileFormatError: return "FileFormatError";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NegativeResult: return "NegativeResult";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NonZeroVertex: return "NonZeroVertex";
    case ErrorCode::EmptyResult: return "EmptyResult";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::NegativeHeight: return "NegativeHeight";
    case ErrorCode::IllegalReducedMove: return "IllegalReducedMove";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::UnsupportedParameters: return "UnsupportedParameters";
    case ErrorCode::UnsupportedGame: return "UnsupportedGame";
    case ErrorCode::NoCaseMatched: return "NoCaseMatched";
    case ErrorCode::NotPointed: return "NotPointed";
    case ErrorCode::BadRequest: return "BadRequest";
    case ErrorCode::IllegalMove: return "IllegalMove";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace setnim
