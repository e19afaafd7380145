#include "bubbles/error.hpp"

namespace bubbles {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kRefDateAbsent: return "RefDateAbsent";
    case ErrorCode::kTooFewStocks: return "TooFewStocks";
    case ErrorCode::kEmptyCrossSection: return "EmptyCrossSection";
    case ErrorCode::kDegenerateTail: return "DegenerateTail";
    case ErrorCode::kBadK: return "BadK";
    case ErrorCode::kTooFewTailPoints: return "TooFewTailPoints";
    case ErrorCode::kNonFiniteVariance: return "NonFiniteVariance";
    case ErrorCode::kWindowTooLarge: return "WindowTooLarge";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNoLimit: return "NoLimit";
    case ErrorCode::kNotPSD: return "NotPSD";
    case ErrorCode::kZeroReps: return "ZeroReps";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kDuplicateDate: return "DuplicateDate";
    case ErrorCode::kNonPositivePrice: return "NonPositivePrice";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

ErrorCategory category_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDegenerateTail:
    case ErrorCode::kBadK:
    case ErrorCode::kTooFewTailPoints:
    case ErrorCode::kNonFiniteVariance:
    case ErrorCode::kWindowTooLarge:
    case ErrorCode::kDimensionMismatch:
    case ErrorCode::kNoLimit:
    case ErrorCode::kNotPSD:
    case ErrorCode::kZeroReps:
      return ErrorCategory::kNumerical;
    default:
      return ErrorCategory::kData;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      detail_(message) {}

Error::Error(ErrorCode code, const std::string& message, std::size_t line,
             std::size_t column)
    : std::runtime_error(std::string(to_string(code)) + " at line " +
                         std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + message),
      code_(code),
      detail_(message),
      line_(line),
      column_(column) {}

}  // namespace bubbles
