#include "bubbles/csv_panel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <unordered_set>

#include "bubbles/error.hpp"
#include "bubbles/text.hpp"

namespace bubbles {

namespace {

std::vector<std::string_view> split(std::string_view line, char delim) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(delim, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

struct Row {
  Date date;
  std::size_t line;
  std::vector<std::optional<double>> prices;
};

}  // namespace

PricePanel parse_price_panel(std::istream& in, const CsvFormat& format) {
  std::string line;
  std::size_t line_no = 0;

  auto next_line = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };

  if (!next_line()) throw Error(ErrorCode::kParseError, "missing header row", 1, 1);
  if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
  const auto header = split(line, format.delimiter);
  if (header.front() != "date") {
    throw Error(ErrorCode::kParseError, "first header cell must be 'date'", 1, 1);
  }
  std::vector<std::string> tickers;
  std::unordered_set<std::string> seen;
  for (std::size_t c = 1; c < header.size(); ++c) {
    std::string t(header[c]);
    if (t.empty()) throw Error(ErrorCode::kParseError, "empty ticker name", 1, c + 1);
    if (!seen.insert(t).second) {
      throw Error(ErrorCode::kParseError, "duplicate ticker '" + t + "'", 1, c + 1);
    }
    tickers.push_back(std::move(t));
  }

  std::vector<Row> rows;
  while (next_line()) {
    if (line.empty()) continue;
    const auto cells = split(line, format.delimiter);
    if (cells.size() != header.size()) {
      throw Error(ErrorCode::kParseError,
                  "expected " + std::to_string(header.size()) + " cells, found " +
                      std::to_string(cells.size()),
                  line_no, std::min(cells.size(), header.size()) + 1);
    }
    const auto date = parse_date(cells[0]);
    if (!date) {
      throw Error(ErrorCode::kParseError, "invalid date '" + std::string(cells[0]) + "'",
                  line_no, 1);
    }
    Row row{*date, line_no, {}};
    row.prices.reserve(tickers.size());
    for (std::size_t c = 1; c < cells.size(); ++c) {
      const auto cell = cells[c];
      if (cell.empty()) {
        row.prices.emplace_back(std::nullopt);
        continue;
      }
      const auto value = parse_decimal(cell);
      if (!value) {
        throw Error(ErrorCode::kParseError, "invalid price '" + std::string(cell) + "'",
                    line_no, c + 1);
      }
      if (!(*value > 0.0) || !std::isfinite(*value)) {
        throw Error(ErrorCode::kNonPositivePrice,
                    "price " + std::string(cell) + " for " + tickers[c - 1], line_no, c + 1);
      }
      row.prices.emplace_back(*value);
    }
    rows.push_back(std::move(row));
  }

  std::stable_sort(rows.begin(), rows.end(),
                   [](const Row& a, const Row& b) { return a.date < b.date; });
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].date == rows[i - 1].date) {
      throw Error(ErrorCode::kDuplicateDate,
                  format_date(rows[i].date) + " also on line " +
                      std::to_string(rows[i - 1].line),
                  rows[i].line, 1);
    }
  }

  std::vector<Date> dates;
  std::vector<std::optional<double>> prices;
  dates.reserve(rows.size());
  prices.reserve(rows.size() * tickers.size());
  for (auto& r : rows) {
    dates.push_back(r.date);
    prices.insert(prices.end(), r.prices.begin(), r.prices.end());
  }
  return PricePanel(std::move(dates), std::move(tickers), prices);
}

PricePanel load_price_panel(const std::filesystem::path& path, const CsvFormat& format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  try {
    return parse_price_panel(in, format);
  } catch (const Error& e) {
    if (e.line()) {
      throw Error(e.code(), path.string() + ": " + e.detail(), *e.line(), *e.column());
    }
    throw;
  }
}

std::string render_price_panel(const PricePanel& panel, const CsvFormat& format) {
  std::string out = "date";
  for (const auto& t : panel.tickers()) {
    out += format.delimiter;
    out += t;
  }
  out += '\n';
  for (std::size_t r = 0; r < panel.num_dates(); ++r) {
    out += format_date(panel.dates()[r]);
    for (std::size_t c = 0; c < panel.num_tickers(); ++c) {
      out += format.delimiter;
      if (auto p = panel.price(r, c)) out += format_double(*p);
    }
    out += '\n';
  }
  return out;
}

}  // namespace bubbles
