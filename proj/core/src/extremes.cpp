#include "bubbles/extremes.hpp"

#include "bubbles/error.hpp"

namespace bubbles {

std::string to_string(ExtremeKind kind) {
  return kind == ExtremeKind::kLocalMinimum ? "local-minimum" : "local-maximum";
}

std::vector<IndexedExtreme> find_local_extremes(std::span<const double> values,
                                                std::size_t window) {
  if (window < 1 || values.size() <= 2 * window) {
    throw Error(ErrorCode::kWindowTooLarge,
                "window " + std::to_string(window) + " needs more than " +
                    std::to_string(2 * window) + " values, got " +
                    std::to_string(values.size()));
  }
  std::vector<IndexedExtreme> out;
  for (std::size_t t = window; t + window < values.size(); ++t) {
    const double v = values[t];
    bool is_min = true, is_max = true;
    for (std::size_t s = t - window; s <= t + window && (is_min || is_max); ++s) {
      if (s == t) continue;
      if (!(v < values[s])) is_min = false;
      if (!(v > values[s])) is_max = false;
    }
    if (is_min) out.push_back({t, ExtremeKind::kLocalMinimum, v});
    if (is_max) out.push_back({t, ExtremeKind::kLocalMaximum, v});
  }
  return out;
}

std::vector<ExtremeEvent> detect_extremes(std::span<const Date> dates,
                                          std::span<const std::optional<double>> values,
                                          std::size_t window) {
  if (dates.size() != values.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "dates and values differ in length");
  }
  std::vector<Date> kept_dates;
  std::vector<double> kept;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i]) {
      kept_dates.push_back(dates[i]);
      kept.push_back(*values[i]);
    }
  }
  std::vector<ExtremeEvent> out;
  for (const auto& e : find_local_extremes(kept, window)) {
    out.push_back({kept_dates[e.index], e.kind, e.value, window});
  }
  return out;
}

}  // namespace bubbles
