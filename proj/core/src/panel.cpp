#include "bubbles/panel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "bubbles/error.hpp"

namespace bubbles {

namespace {

constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

}  // namespace

PricePanel::PricePanel(std::vector<Date> dates, std::vector<std::string> tickers,
                       const std::vector<std::optional<double>>& prices)
    : dates_(std::move(dates)), tickers_(std::move(tickers)) {
  if (prices.size() != dates_.size() * tickers_.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "price matrix has " + std::to_string(prices.size()) +
                    " cells, expected " +
                    std::to_string(dates_.size() * tickers_.size()));
  }
  for (std::size_t i = 1; i < dates_.size(); ++i) {
    if (dates_[i] == dates_[i - 1]) {
      throw Error(ErrorCode::kDuplicateDate, format_date(dates_[i]));
    }
    if (dates_[i] < dates_[i - 1]) {
      throw Error(ErrorCode::kInvalidArgument,
                  "dates must be strictly increasing at " + format_date(dates_[i]));
    }
  }
  std::unordered_set<std::string> seen;
  for (const auto& t : tickers_) {
    if (!seen.insert(t).second) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate ticker '" + t + "'");
    }
  }
  prices_.reserve(prices.size());
  for (std::size_t k = 0; k < prices.size(); ++k) {
    const auto& p = prices[k];
    if (!p) {
      prices_.push_back(kMissing);
      continue;
    }
    if (!(*p > 0.0) || !std::isfinite(*p)) {
      const std::size_t row = k / tickers_.size();
      const std::size_t col = k % tickers_.size();
      throw Error(ErrorCode::kNonPositivePrice,
                  tickers_[col] + " on " + format_date(dates_[row]));
    }
    prices_.push_back(*p);
  }
}

std::optional<double> PricePanel::price(std::size_t row, std::size_t col) const {
  const double v = prices_.at(row * tickers_.size() + col);
  if (std::isnan(v)) return std::nullopt;
  return v;
}

std::optional<std::size_t> PricePanel::row_of(Date date) const {
  auto it = std::lower_bound(dates_.begin(), dates_.end(), date);
  if (it == dates_.end() || *it != date) return std::nullopt;
  return static_cast<std::size_t>(it - dates_.begin());
}

std::string to_string(MissingDataPolicy policy) {
  switch (policy) {
    case MissingDataPolicy::kDropAtRef: return "drop-at-ref";
    case MissingDataPolicy::kRequireComplete: return "require-complete";
  }
  return "unknown";
}

std::optional<MissingDataPolicy> parse_missing_data_policy(std::string_view text) {
  if (text == "drop-at-ref") return MissingDataPolicy::kDropAtRef;
  if (text == "require-complete") return MissingDataPolicy::kRequireComplete;
  return std::nullopt;
}

PerformancePanel::PerformancePanel(Date t_ref, std::vector<Date> dates,
                                   std::vector<std::string> tickers,
                                   std::vector<double> values)
    : t_ref_(t_ref),
      dates_(std::move(dates)),
      tickers_(std::move(tickers)),
      values_(std::move(values)) {
  if (values_.size() != dates_.size() * tickers_.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "performance matrix shape");
  }
}

std::optional<double> PerformancePanel::value(std::size_t row, std::size_t col) const {
  const double v = values_.at(row * tickers_.size() + col);
  if (std::isnan(v)) return std::nullopt;
  return v;
}

std::vector<double> PerformancePanel::cross_section(std::size_t row) const {
  std::vector<double> out;
  out.reserve(tickers_.size());
  const double* begin = values_.data() + row * tickers_.size();
  for (std::size_t i = 0; i < tickers_.size(); ++i) {
    if (!std::isnan(begin[i])) out.push_back(begin[i]);
  }
  return out;
}

PerformancePanel normalize_panel(const PricePanel& panel, Date t_ref,
                                 MissingDataPolicy policy, std::size_t min_stocks) {
  const auto ref_row = panel.row_of(t_ref);
  if (!ref_row) {
    throw Error(ErrorCode::kRefDateAbsent,
                "reference date " + format_date(t_ref) + " is not in the panel");
  }
  const std::size_t first = *ref_row;
  const std::size_t rows = panel.num_dates() - first;

  std::vector<std::size_t> included;
  for (std::size_t col = 0; col < panel.num_tickers(); ++col) {
    if (!panel.price(first, col)) continue;
    if (policy == MissingDataPolicy::kRequireComplete) {
      bool complete = true;
      for (std::size_t r = first; r < panel.num_dates() && complete; ++r) {
        complete = panel.price(r, col).has_value();
      }
      if (!complete) continue;
    }
    included.push_back(col);
  }
  if (included.size() < min_stocks) {
    throw Error(ErrorCode::kTooFewStocks,
                std::to_string(included.size()) + " stock(s) usable at " +
                    format_date(t_ref) + ", need " + std::to_string(min_stocks));
  }

  std::vector<std::string> tickers;
  tickers.reserve(included.size());
  for (auto col : included) tickers.push_back(panel.tickers()[col]);

  std::vector<double> values(rows * included.size(), kMissing);
  for (std::size_t j = 0; j < included.size(); ++j) {
    const std::size_t col = included[j];
    const double base = *panel.price(first, col);
    values[j] = 1.0;
    for (std::size_t r = 1; r < rows; ++r) {
      if (auto p = panel.price(first + r, col)) values[r * included.size() + j] = *p / base;
    }
  }
  std::vector<Date> dates(panel.dates().begin() + static_cast<std::ptrdiff_t>(first),
                          panel.dates().end());
  return PerformancePanel(t_ref, std::move(dates), std::move(tickers), std::move(values));
}

}  // namespace bubbles
