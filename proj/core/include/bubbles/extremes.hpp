#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bubbles/date.hpp"

namespace bubbles {

enum class ExtremeKind { kLocalMinimum, kLocalMaximum };

std::string to_string(ExtremeKind kind);

struct IndexedExtreme {
  std::size_t index;
  ExtremeKind kind;
  double value;
};

/// Strict local extremes with a symmetric half-width `window`. Position t is
/// a minimum iff values[t] < values[s] for every s != t with |s - t| <= window
/// (maxima likewise). Only positions with a full window on both sides are
/// candidates, and ties never produce an event. Throws WindowTooLarge unless
/// window >= 1 and values.size() > 2 * window.
std::vector<IndexedExtreme> find_local_extremes(std::span<const double> values,
                                                std::size_t window);

struct ExtremeEvent {
  Date date;
  ExtremeKind kind;
  double value;
  std::size_t window;
};

/// Dated variant: gaps (nullopt) are dropped before scanning, so the window
/// counts observed dates only.
std::vector<ExtremeEvent> detect_extremes(std::span<const Date> dates,
                                          std::span<const std::optional<double>> values,
                                          std::size_t window);

}  // namespace bubbles
