#pragma once

#include <filesystem>
#include <istream>
#include <string>

#include "bubbles/panel.hpp"

namespace bubbles {

/// Price panel CSV layout:
///
///   date,AAA,BBB,...
///   2003-01-02,10.5,,20
///
/// UTF-8 (an optional BOM is skipped), ISO-8601 dates in the first column,
/// plain decimal prices, an empty cell for a missing price, no thousands
/// separators. Rows may appear in any date order.
struct CsvFormat {
  char delimiter = ',';
};

/// Throws ParseError(line, column), DuplicateDate, or NonPositivePrice with
/// the 1-based location of the offending cell, and IoError if the file
/// cannot be opened.
PricePanel load_price_panel(const std::filesystem::path& path, const CsvFormat& format = {});

PricePanel parse_price_panel(std::istream& in, const CsvFormat& format = {});

/// Inverse of parse_price_panel, prices printed with 17 significant digits.
std::string render_price_panel(const PricePanel& panel, const CsvFormat& format = {});

}  // namespace bubbles
