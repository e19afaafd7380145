#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bubbles {

enum class ErrorCode {
  kInvalidArgument,
  kRefDateAbsent,
  kTooFewStocks,
  kEmptyCrossSection,
  kDegenerateTail,
  kBadK,
  kTooFewTailPoints,
  kNonFiniteVariance,
  kWindowTooLarge,
  kDimensionMismatch,
  kNoLimit,
  kNotPSD,
  kZeroReps,
  kParseError,
  kDuplicateDate,
  kNonPositivePrice,
  kIoError,
};

std::string_view to_string(ErrorCode code);

/// Coarse grouping used by the command-line tool to pick an exit code.
enum class ErrorCategory { kData, kNumerical };

ErrorCategory category_of(ErrorCode code);

/// Exception carrying a machine-readable code and, for parse failures, the
/// 1-based line and column of the offending input cell.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  Error(ErrorCode code, const std::string& message, std::size_t line,
        std::size_t column);

  ErrorCode code() const noexcept { return code_; }
  /// Message without the code and location prefix.
  const std::string& detail() const noexcept { return detail_; }
  std::optional<std::size_t> line() const noexcept { return line_; }
  std::optional<std::size_t> column() const noexcept { return column_; }

 private:
  ErrorCode code_;
  std::string detail_;
  std::optional<std::size_t> line_;
  std::optional<std::size_t> column_;
};

}  // namespace bubbles
