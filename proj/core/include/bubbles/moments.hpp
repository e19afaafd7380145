#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "bubbles/date.hpp"
#include "bubbles/panel.hpp"

namespace bubbles {

struct Moments {
  double mean;
  /// Population variance, (1/N) sum (x_i - mean)^2. Not the 1/(N-1) sample
  /// estimator.
  double variance;
};

/// Throws TooFewStocks when x has fewer than two entries.
Moments cross_sectional_moments(std::span<const double> x);

/// (1 / 2N^2) sum_{i,j} (x_i - x_j)^2, computed pair by pair. Equal to the
/// population variance; kept as an independent route for cross-checks.
double pairwise_dispersion(std::span<const double> x);

/// Per-date cross-sectional mean and dispersion V_N.
///
/// `variance[t]` is nullopt where fewer than two stocks are present, and
/// `mean[t]` is nullopt where none are.
struct DispersionSeries {
  std::vector<Date> dates;
  std::vector<std::optional<double>> mean;
  std::vector<std::optional<double>> variance;
  std::vector<std::size_t> count;

  std::size_t size() const { return dates.size(); }
};

/// `workers` follows resolve_workers(); results do not depend on it.
DispersionSeries dispersion_series(const PerformancePanel& perf, unsigned workers = 1);

}  // namespace bubbles
