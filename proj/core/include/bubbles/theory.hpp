#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

namespace bubbles {

/// Common off-diagonal correlation rho in [-1, 1].
struct Equicorrelation {
  double rho;
};

/// Dense symmetric correlation matrix with unit diagonal, row-major.
class CorrelationMatrix {
 public:
  /// Throws InvalidArgument unless `entries` is n*n, symmetric, has a unit
  /// diagonal, and lies in [-1, 1]. Symmetry is checked to 1e-12.
  CorrelationMatrix(std::size_t n, std::vector<double> entries);

  static CorrelationMatrix identity(std::size_t n);

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  const std::vector<double>& entries() const { return entries_; }

 private:
  std::size_t n_;
  std::vector<double> entries_;
};

using CorrelationStructure = std::variant<Equicorrelation, CorrelationMatrix>;

/// Means m_i, standard deviations sigma_i and correlations rho_ij of the
/// performances X_i.
///
/// Any symmetric structure is accepted here, including ones no joint
/// distribution realizes (e.g. rho = -1 for n > 2): the dispersion algebra
/// does not need positive semidefiniteness. Realizability is reported by
/// validate_feasibility() and enforced only by the simulator.
class CorrelationSpec {
 public:
  /// Throws DimensionMismatch if sizes disagree and InvalidArgument for a
  /// non-positive sigma or rho outside [-1, 1].
  CorrelationSpec(std::vector<double> means, std::vector<double> sigmas,
                  CorrelationStructure structure);

  /// n stocks with identical mean, sigma and pairwise correlation rho.
  static CorrelationSpec equicorrelated(std::size_t n, double rho, double sigma = 1.0,
                                        double mean = 0.0);

  std::size_t size() const { return means_.size(); }
  const std::vector<double>& means() const { return means_; }
  const std::vector<double>& sigmas() const { return sigmas_; }
  const CorrelationStructure& structure() const { return structure_; }

  double correlation(std::size_t i, std::size_t j) const;

  /// Same structure with every sigma multiplied by `factor`.
  CorrelationSpec scaled(double factor) const;

 private:
  std::vector<double> means_;
  std::vector<double> sigmas_;
  CorrelationStructure structure_;
};

/// E(V_N) = (1/N) sum sigma_i^2 - (1/N^2) sum_ij rho_ij sigma_i sigma_j
///          + (1/N) sum m_i^2 - ((1/N) sum m_i)^2.
/// Requires finite second moments of every X_i (and, for the probability
/// limit, finite moments up to order four).
double expected_dispersion(const CorrelationSpec& spec);

/// Closed form of expected_dispersion for equal sigma, zero mean and common
/// correlation: (1 - 1/n)(1 - rho) sigma^2. Requires n >= 2, sigma > 0.
double equicorrelation_expected_dispersion(std::size_t n, double rho, double sigma = 1.0);

/// A family of specs indexed by N, described by its large-N behaviour.
struct EquicorrelatedFamily {
  double rho;
  double sigma = 1.0;
};

/// Limits, as N grows, of the four averages in expected_dispersion. Any
/// unknown term makes the limit unavailable.
struct TermLimits {
  std::optional<double> mean_variance;     // (1/N) sum sigma_i^2
  std::optional<double> mean_covariance;   // (1/N^2) sum_ij rho_ij sigma_i sigma_j
  std::optional<double> mean_square_mean;  // (1/N) sum m_i^2
  std::optional<double> mean_mean;         // (1/N) sum m_i
};

using DispersionFamily = std::variant<EquicorrelatedFamily, TermLimits>;

/// Large-N limit of E(V_N); when Var(V_N) -> 0 this is also the probability
/// limit of V_N. Throws NoLimit if a term limit is missing.
double limit_dispersion(const DispersionFamily& family);

struct DispersionBounds {
  double lower;
  double upper;
};

/// Range of E(V_N) for centered, unit-variance performances: 0 at rho == 1
/// and 2 - 2/n at rho == -1 (an algebraic supremum; infeasible for n > 2).
DispersionBounds dispersion_bounds(std::size_t n);

/// The n -> infinity bounds, (0, 2).
DispersionBounds dispersion_bounds_limit();

}  // namespace bubbles
