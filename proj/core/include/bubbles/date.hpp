#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace bubbles {

using Date = std::chrono::year_month_day;

/// Parses a strict ISO-8601 calendar date (YYYY-MM-DD). Returns nullopt on
/// any deviation, including impossible days such as 2021-02-30.
std::optional<Date> parse_date(std::string_view text);

std::string format_date(Date date);

/// Monday..Friday; no exchange holiday calendar.
bool is_weekday(Date date);

Date add_days(Date date, int days);

}  // namespace bubbles
