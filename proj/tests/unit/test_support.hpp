#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bubbles/date.hpp"
#include "bubbles/panel.hpp"
#include "bubbles/theory.hpp"

namespace bubbles::testing {

inline Date day(const std::string& iso) { return *parse_date(iso); }

inline std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n, double lo = 0.1,
                                         double hi = 5.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

/// x_i = (1 - i/(n+1))^(-1/alpha), i = 1..n: the Pareto(alpha) quantile grid.
inline std::vector<double> pareto_quantile_grid(std::size_t n, double alpha) {
  std::vector<double> v(n);
  for (std::size_t i = 1; i <= n; ++i) {
    v[i - 1] = std::pow(1.0 - static_cast<double>(i) / static_cast<double>(n + 1), -1.0 / alpha);
  }
  return v;
}

/// Panel with one price row per date; prices[t][i].
inline PricePanel make_panel(const std::vector<std::string>& dates,
                             const std::vector<std::vector<std::optional<double>>>& prices) {
  std::vector<Date> ds;
  for (const auto& d : dates) ds.push_back(day(d));
  std::vector<std::string> tickers;
  for (std::size_t i = 0; i < prices.front().size(); ++i) tickers.push_back("T" + std::to_string(i));
  std::vector<std::optional<double>> flat;
  for (const auto& row : prices) flat.insert(flat.end(), row.begin(), row.end());
  return PricePanel(std::move(ds), std::move(tickers), flat);
}

/// Random correlation matrix: normalized Gram matrix of n random vectors in
/// dimension `rank` (rank < n gives a singular, still PSD, matrix).
inline CorrelationMatrix random_correlation(std::mt19937_64& rng, std::size_t n,
                                            std::size_t rank) {
  std::normal_distribution<double> gauss;
  std::vector<std::vector<double>> v(n, std::vector<double>(rank));
  for (auto& row : v) {
    double norm = 0.0;
    for (auto& e : row) {
      e = gauss(rng);
      norm += e * e;
    }
    for (auto& e : row) e /= std::sqrt(norm);
  }
  std::vector<double> r(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double dot = 0.0;
      for (std::size_t k = 0; k < rank; ++k) dot += v[i][k] * v[j][k];
      r[i * n + j] = i == j ? 1.0 : std::clamp(dot, -1.0, 1.0);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) r[i * n + j] = r[j * n + i];
  }
  return CorrelationMatrix(n, std::move(r));
}

}  // namespace bubbles::testing
