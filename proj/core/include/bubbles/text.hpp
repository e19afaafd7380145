#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace bubbles {

/// 17 significant digits, enough to round-trip any double exactly.
std::string format_double(double value);

/// Strict decimal parse of the whole string; rejects blanks, signs other than
/// a leading '-', trailing garbage and non-finite values.
std::optional<double> parse_decimal(std::string_view text);

}  // namespace bubbles
