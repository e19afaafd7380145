#include "bubbles/moments.hpp"

#include <algorithm>

#include "bubbles/error.hpp"
#include "bubbles/parallel.hpp"

namespace bubbles {

Moments cross_sectional_moments(std::span<const double> x) {
  if (x.size() < 2) {
    throw Error(ErrorCode::kTooFewStocks,
                "variance needs at least 2 values, got " + std::to_string(x.size()));
  }
  // A constant cross-section has exactly zero dispersion; summing N copies
  // of a non-representable value would otherwise leave rounding residue.
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  if (*lo == *hi) return {*lo, 0.0};

  const double n = static_cast<double>(x.size());
  double sum = 0.0;
  for (double v : x) sum += v;
  const double mean = sum / n;
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  return {mean, ss / n};
}

double pairwise_dispersion(std::span<const double> x) {
  if (x.size() < 2) {
    throw Error(ErrorCode::kTooFewStocks,
                "variance needs at least 2 values, got " + std::to_string(x.size()));
  }
  // Each unordered pair appears twice in the double sum, so the 1/(2N^2)
  // factor reduces to 1/N^2 over i < j.
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const double d = x[i] - x[j];
      sum += d * d;
    }
  }
  const double n = static_cast<double>(x.size());
  return sum / (n * n);
}

DispersionSeries dispersion_series(const PerformancePanel& perf, unsigned workers) {
  DispersionSeries out;
  const std::size_t rows = perf.num_dates();
  out.dates = perf.dates();
  out.mean.assign(rows, std::nullopt);
  out.variance.assign(rows, std::nullopt);
  out.count.assign(rows, 0);

  parallel_for(rows, workers, [&](std::size_t r) {
    const auto x = perf.cross_section(r);
    out.count[r] = x.size();
    if (x.size() >= 2) {
      const auto m = cross_sectional_moments(x);
      out.mean[r] = m.mean;
      out.variance[r] = m.variance;
    } else if (x.size() == 1) {
      out.mean[r] = x.front();
    }
  });
  return out;
}

}  // namespace bubbles
