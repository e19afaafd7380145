#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bubbles/date.hpp"
#include "bubbles/panel.hpp"
#include "bubbles/survival.hpp"

namespace bubbles {

enum class TailMethod { kHill, kLogLog };

std::string to_string(TailMethod method);

/// Estimated Pareto exponent alpha of S_N(z) ~ z^-alpha.
struct TailEstimate {
  double alpha_hat;
  std::size_t k;  // order statistics (Hill) or regression points (log-log)
  std::size_t n;
  TailMethod method;
};

/// Hill estimator on the k largest values:
///   H = (1/k) sum_{i=1..k} ln(X_(n-i+1) / X_(n-k)),  alpha_hat = 1 / H.
/// Requires 1 <= k < n and x > 0. Throws BadK or DegenerateTail (H == 0).
TailEstimate hill_estimator(std::span<const double> x, std::size_t k);

/// Hill estimates for each k in `ks`; entries that fail are nullopt.
std::vector<std::optional<TailEstimate>> hill_k_sweep(std::span<const double> x,
                                                     std::span<const std::size_t> ks);

/// Unweighted least-squares slope of ln s against ln z; alpha_hat = -slope.
/// Points with z <= 0 or s <= 0 are skipped. Throws TooFewTailPoints with
/// fewer than three usable points and DegenerateTail if alpha_hat <= 0 or
/// the abscissae do not vary.
TailEstimate loglog_fit(std::span<const StepPoint> points);

/// Log-log fit over the curve's step points strictly above z_min (default:
/// the cross-sectional median) with positive survival.
TailEstimate loglog_tail_fit(const SurvivalCurve& curve,
                             std::optional<double> z_min = std::nullopt);

double median(std::span<const double> x);

/// Variance of a power law with index alpha: alpha / ((alpha-1)^2 (alpha-2)).
/// Throws NonFiniteVariance for alpha <= 2.
double pareto_variance(double alpha);

/// How many upper order statistics the Hill estimator uses on a date.
struct KPolicy {
  double fraction = 0.10;             // k = ceil(fraction * n)
  std::optional<std::size_t> fixed;   // overrides fraction when set
  std::size_t min_cross_section = 10; // smaller cross-sections are gaps

  /// nullopt when the date must be a gap.
  std::optional<std::size_t> choose(std::size_t n) const;
  std::string describe() const;
};

struct TailSeries {
  std::vector<Date> dates;
  std::vector<std::optional<TailEstimate>> estimates;
  KPolicy k_policy;

  std::size_t size() const { return dates.size(); }
  /// alpha_hat per date, nullopt at gaps.
  std::vector<std::optional<double>> alpha() const;
};

/// Per-date Hill estimates. Dates where the estimator cannot run (too few
/// stocks, degenerate tail) become gaps; the series never aborts.
TailSeries tail_series(const PerformancePanel& perf, const KPolicy& policy = {},
                       unsigned workers = 1);

}  // namespace bubbles
