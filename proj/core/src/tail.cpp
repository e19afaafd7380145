#include "bubbles/tail.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>

#include "bubbles/error.hpp"
#include "bubbles/parallel.hpp"

namespace bubbles {

std::string to_string(TailMethod method) {
  return method == TailMethod::kHill ? "hill" : "loglog";
}

TailEstimate hill_estimator(std::span<const double> x, std::size_t k) {
  const std::size_t n = x.size();
  if (k < 1 || k >= n) {
    throw Error(ErrorCode::kBadK, "k=" + std::to_string(k) + " outside [1, " +
                                      std::to_string(n) + ")");
  }
  for (double v : x) {
    if (!(v > 0.0)) throw Error(ErrorCode::kInvalidArgument, "Hill estimator needs x > 0");
  }
  // Only the top k+1 order statistics matter; partition them to the front.
  std::vector<double> top(x.begin(), x.end());
  std::nth_element(top.begin(), top.begin() + static_cast<std::ptrdiff_t>(k), top.end(),
                   std::greater<>());
  const double threshold = top[k];  // X_(n-k)
  std::sort(top.begin(), top.begin() + static_cast<std::ptrdiff_t>(k), std::greater<>());

  double h = 0.0;
  for (std::size_t i = 0; i < k; ++i) h += std::log(top[i] / threshold);
  h /= static_cast<double>(k);
  if (!(h > 0.0)) {
    throw Error(ErrorCode::kDegenerateTail, "top " + std::to_string(k + 1) + " values are equal");
  }
  return {1.0 / h, k, n, TailMethod::kHill};
}

std::vector<std::optional<TailEstimate>> hill_k_sweep(std::span<const double> x,
                                                     std::span<const std::size_t> ks) {
  std::vector<std::optional<TailEstimate>> out;
  out.reserve(ks.size());
  for (auto k : ks) {
    try {
      out.emplace_back(hill_estimator(x, k));
    } catch (const Error&) {
      out.emplace_back(std::nullopt);
    }
  }
  return out;
}

TailEstimate loglog_fit(std::span<const StepPoint> points) {
  std::vector<double> lx, ly;
  for (const auto& p : points) {
    if (p.z > 0.0 && p.survival > 0.0) {
      lx.push_back(std::log(p.z));
      ly.push_back(std::log(p.survival));
    }
  }
  const std::size_t m = lx.size();
  if (m < 3) {
    throw Error(ErrorCode::kTooFewTailPoints,
                std::to_string(m) + " usable tail point(s), need 3");
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (!(sxx > 0.0)) throw Error(ErrorCode::kDegenerateTail, "tail abscissae do not vary");
  const double alpha = -sxy / sxx;
  if (!(alpha > 0.0)) {
    throw Error(ErrorCode::kDegenerateTail, "non-decreasing log-log tail (alpha_hat <= 0)");
  }
  return {alpha, m, points.size(), TailMethod::kLogLog};
}

double median(std::span<const double> x) {
  if (x.empty()) throw Error(ErrorCode::kEmptyCrossSection, "median of empty sample");
  std::vector<double> v(x.begin(), x.end());
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 == 1 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

TailEstimate loglog_tail_fit(const SurvivalCurve& curve, std::optional<double> z_min) {
  const double cut = z_min.value_or(median(curve.sorted_values()));
  auto points = curve.step_points();
  std::erase_if(points, [cut](const StepPoint& p) { return !(p.z > cut); });
  auto est = loglog_fit(points);
  est.n = curve.size();
  return est;
}

double pareto_variance(double alpha) {
  if (!(alpha > 2.0)) {
    throw Error(ErrorCode::kNonFiniteVariance,
                "power-law variance diverges for alpha <= 2");
  }
  return alpha / ((alpha - 1.0) * (alpha - 1.0) * (alpha - 2.0));
}

std::optional<std::size_t> KPolicy::choose(std::size_t n) const {
  if (n < min_cross_section) return std::nullopt;
  std::size_t k = fixed ? *fixed
                        : static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n)));
  if (k < 1 || k >= n) return std::nullopt;
  return k;
}

std::string KPolicy::describe() const {
  char buf[96];
  if (fixed) {
    std::snprintf(buf, sizeof(buf), "k=%zu;min_n=%zu", *fixed, min_cross_section);
  } else {
    char frac[32];
    const auto end = std::to_chars(frac, frac + sizeof(frac), fraction).ptr;
    std::snprintf(buf, sizeof(buf), "k=ceil(%.*s*n);min_n=%zu", static_cast<int>(end - frac), frac,
                  min_cross_section);
  }
  return buf;
}

std::vector<std::optional<double>> TailSeries::alpha() const {
  std::vector<std::optional<double>> out;
  out.reserve(estimates.size());
  for (const auto& e : estimates) {
    out.push_back(e ? std::optional<double>(e->alpha_hat) : std::nullopt);
  }
  return out;
}

TailSeries tail_series(const PerformancePanel& perf, const KPolicy& policy, unsigned workers) {
  TailSeries out;
  out.dates = perf.dates();
  out.estimates.assign(perf.num_dates(), std::nullopt);
  out.k_policy = policy;
  parallel_for(perf.num_dates(), workers, [&](std::size_t r) {
    const auto x = perf.cross_section(r);
    const auto k = policy.choose(x.size());
    if (!k) return;
    try {
      out.estimates[r] = hill_estimator(x, *k);
    } catch (const Error&) {
      // degenerate dates (e.g. t_ref, where every X_i = 1) are gaps
    }
  });
  return out;
}

}  // namespace bubbles
