#include "bubbles/theory.hpp"

#include <cmath>

#include "bubbles/error.hpp"

namespace bubbles {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_rho(double rho) {
  if (!(rho >= -1.0 && rho <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "correlation outside [-1, 1]");
  }
}

}  // namespace

CorrelationMatrix::CorrelationMatrix(std::size_t n, std::vector<double> entries)
    : n_(n), entries_(std::move(entries)) {
  if (entries_.size() != n_ * n_) {
    throw Error(ErrorCode::kDimensionMismatch, "correlation matrix must be n x n");
  }
  for (std::size_t i = 0; i < n_; ++i) {
    if ((*this)(i, i) != 1.0) {
      throw Error(ErrorCode::kInvalidArgument, "correlation diagonal must be 1");
    }
    for (std::size_t j = 0; j < i; ++j) {
      check_rho((*this)(i, j));
      if (std::abs((*this)(i, j) - (*this)(j, i)) > 1e-12) {
        throw Error(ErrorCode::kInvalidArgument, "correlation matrix is not symmetric");
      }
    }
  }
}

CorrelationMatrix CorrelationMatrix::identity(std::size_t n) {
  std::vector<double> e(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1.0;
  return CorrelationMatrix(n, std::move(e));
}

CorrelationSpec::CorrelationSpec(std::vector<double> means, std::vector<double> sigmas,
                                 CorrelationStructure structure)
    : means_(std::move(means)), sigmas_(std::move(sigmas)), structure_(std::move(structure)) {
  if (means_.size() != sigmas_.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "means and sigmas differ in length");
  }
  if (means_.empty()) throw Error(ErrorCode::kInvalidArgument, "empty universe");
  for (double s : sigmas_) {
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw Error(ErrorCode::kInvalidArgument, "sigmas must be positive and finite");
    }
  }
  std::visit(overloaded{[](const Equicorrelation& e) { check_rho(e.rho); },
                        [this](const CorrelationMatrix& m) {
                          if (m.size() != means_.size()) {
                            throw Error(ErrorCode::kDimensionMismatch,
                                        "correlation matrix size differs from universe size");
                          }
                        }},
             structure_);
}

CorrelationSpec CorrelationSpec::equicorrelated(std::size_t n, double rho, double sigma,
                                                double mean) {
  return CorrelationSpec(std::vector<double>(n, mean), std::vector<double>(n, sigma),
                         Equicorrelation{rho});
}

double CorrelationSpec::correlation(std::size_t i, std::size_t j) const {
  if (i == j) return 1.0;
  return std::visit(overloaded{[](const Equicorrelation& e) { return e.rho; },
                               [i, j](const CorrelationMatrix& m) { return m(i, j); }},
                    structure_);
}

CorrelationSpec CorrelationSpec::scaled(double factor) const {
  auto sigmas = sigmas_;
  for (auto& s : sigmas) s *= factor;
  return CorrelationSpec(means_, std::move(sigmas), structure_);
}

double expected_dispersion(const CorrelationSpec& spec) {
  const auto& m = spec.means();
  const auto& s = spec.sigmas();
  const double n = static_cast<double>(spec.size());

  double sum_var = 0.0, sum_sigma = 0.0, sum_m = 0.0, sum_m2 = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    sum_var += s[i] * s[i];
    sum_sigma += s[i];
    sum_m += m[i];
    sum_m2 += m[i] * m[i];
  }

  // sum_ij rho_ij sigma_i sigma_j, diagonal included.
  const double cov_sum = std::visit(
      overloaded{[&](const Equicorrelation& e) {
                   return sum_var + e.rho * (sum_sigma * sum_sigma - sum_var);
                 },
                 [&](const CorrelationMatrix& r) {
                   double total = 0.0;
                   for (std::size_t i = 0; i < r.size(); ++i) {
                     for (std::size_t j = 0; j < r.size(); ++j) total += r(i, j) * s[i] * s[j];
                   }
                   return total;
                 }},
      spec.structure());

  const double mean_m = sum_m / n;
  return sum_var / n - cov_sum / (n * n) + sum_m2 / n - mean_m * mean_m;
}

double equicorrelation_expected_dispersion(std::size_t n, double rho, double sigma) {
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "n must be at least 2");
  if (!(sigma > 0.0)) throw Error(ErrorCode::kInvalidArgument, "sigma must be positive");
  check_rho(rho);
  return (1.0 - 1.0 / static_cast<double>(n)) * (1.0 - rho) * sigma * sigma;
}

double limit_dispersion(const DispersionFamily& family) {
  return std::visit(
      overloaded{[](const EquicorrelatedFamily& f) {
                   check_rho(f.rho);
                   if (!(f.sigma > 0.0)) {
                     throw Error(ErrorCode::kInvalidArgument, "sigma must be positive");
                   }
                   return (1.0 - f.rho) * f.sigma * f.sigma;
                 },
                 [](const TermLimits& t) {
                   if (!t.mean_variance || !t.mean_covariance || !t.mean_square_mean ||
                       !t.mean_mean) {
                     throw Error(ErrorCode::kNoLimit,
                                 "all four term limits are required for this family");
                   }
                   return *t.mean_variance - *t.mean_covariance + *t.mean_square_mean -
                          *t.mean_mean * *t.mean_mean;
                 }},
      family);
}

DispersionBounds dispersion_bounds(std::size_t n) {
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "n must be at least 2");
  return {0.0, 2.0 - 2.0 / static_cast<double>(n)};
}

DispersionBounds dispersion_bounds_limit() { return {0.0, 2.0}; }

}  // namespace bubbles
