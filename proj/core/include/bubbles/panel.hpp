#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bubbles/date.hpp"

namespace bubbles {

/// Dates x tickers matrix of adjusted close prices. Missing entries are
/// allowed; every present price is strictly positive.
class PricePanel {
 public:
  PricePanel() = default;

  /// `prices` is row-major (one row per date) and uses nullopt for missing
  /// cells. Throws Error on unsorted/duplicate dates, duplicate tickers, a
  /// shape mismatch, or a non-positive price.
  PricePanel(std::vector<Date> dates, std::vector<std::string> tickers,
             const std::vector<std::optional<double>>& prices);

  std::size_t num_dates() const { return dates_.size(); }
  std::size_t num_tickers() const { return tickers_.size(); }
  const std::vector<Date>& dates() const { return dates_; }
  const std::vector<std::string>& tickers() const { return tickers_; }

  std::optional<double> price(std::size_t row, std::size_t col) const;
  std::optional<std::size_t> row_of(Date date) const;

 private:
  std::vector<Date> dates_;
  std::vector<std::string> tickers_;
  std::vector<double> prices_;  // NaN marks a missing cell
};

enum class MissingDataPolicy {
  /// Exclude stocks without a price at t_ref; later gaps only remove the
  /// stock from that date's cross-section.
  kDropAtRef,
  /// Exclude stocks with any missing price on or after t_ref.
  kRequireComplete,
};

std::string to_string(MissingDataPolicy policy);
std::optional<MissingDataPolicy> parse_missing_data_policy(std::string_view text);

/// Performances X_i(t_ref, t) = S_i(t) / S_i(t_ref) for dates t >= t_ref.
class PerformancePanel {
 public:
  PerformancePanel(Date t_ref, std::vector<Date> dates,
                   std::vector<std::string> tickers, std::vector<double> values);

  Date t_ref() const { return t_ref_; }
  std::size_t num_dates() const { return dates_.size(); }
  std::size_t num_tickers() const { return tickers_.size(); }
  const std::vector<Date>& dates() const { return dates_; }
  const std::vector<std::string>& tickers() const { return tickers_; }

  std::optional<double> value(std::size_t row, std::size_t col) const;

  /// Performances of the stocks present on `row`, in ticker order.
  std::vector<double> cross_section(std::size_t row) const;

 private:
  Date t_ref_;
  std::vector<Date> dates_;
  std::vector<std::string> tickers_;
  std::vector<double> values_;  // NaN marks a stock absent on that date
};

/// Normalizes prices by their value at t_ref. Throws RefDateAbsent when
/// t_ref is not a panel date and TooFewStocks when fewer than `min_stocks`
/// stocks survive the policy.
PerformancePanel normalize_panel(const PricePanel& panel, Date t_ref,
                                 MissingDataPolicy policy = MissingDataPolicy::kDropAtRef,
                                 std::size_t min_stocks = 2);

}  // namespace bubbles
