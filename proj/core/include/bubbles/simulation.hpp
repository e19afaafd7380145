#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bubbles/random.hpp"
#include "bubbles/theory.hpp"

namespace bubbles {

/// Eigenvalues of the correlation matrix down to -kPsdTolerance are treated
/// as zero.
inline constexpr double kPsdTolerance = 1e-10;

struct FeasibilityReport {
  bool feasible;
  double min_eigenvalue;  // of the correlation matrix
  std::string reason;     // empty when feasible
};

/// Whether a Gaussian vector with this correlation structure exists.
/// Equicorrelation uses the closed-form spectrum {1 - rho, 1 + (n-1) rho};
/// dense matrices use a symmetric eigendecomposition.
FeasibilityReport validate_feasibility(const CorrelationSpec& spec);

/// Draws N(m, D R D) vectors, D = diag(sigma), R the correlation matrix.
///
/// Equicorrelation with rho >= 0 uses the one-factor construction
///   X_i = m_i + sigma_i (sqrt(rho) Z + sqrt(1 - rho) eps_i);
/// negative equicorrelation uses the closed-form symmetric square root
///   sqrt(1 - rho) (I - P) + sqrt(1 + (n-1) rho) P,  P = 11'/n;
/// dense matrices use V sqrt(max(Lambda, 0)) from the eigendecomposition.
class GaussianSampler {
 public:
  /// Throws NotPSD for infeasible specs.
  explicit GaussianSampler(const CorrelationSpec& spec);

  std::size_t dimension() const { return means_.size(); }

  /// Fills `out` (size dimension()) with one draw.
  void sample(CounterStream& rng, std::span<double> out) const;

 private:
  enum class Kind { kOneFactor, kNegativeEqui, kDense };

  Kind kind_;
  std::vector<double> means_;
  std::vector<double> sigmas_;
  double rho_ = 0.0;
  std::vector<double> factor_;  // n x n row-major, correlation scale, kDense only
};

std::vector<double> sample_gaussian_vector(const CorrelationSpec& spec, CounterStream& rng);

struct SimConfig {
  CorrelationSpec spec;
  std::size_t reps = 100;
  std::uint64_t seed = 0;
  bool keep_per_rep = false;
  unsigned workers = 1;  // 0 = hardware concurrency; never affects results
};

struct SimResult {
  double mean_vn;
  double se_vn;   // sqrt(var_vn / reps)
  double var_vn;  // sample variance (1/(M-1)) of V_N across replications
  std::vector<double> per_rep;
  std::size_t n;
  std::size_t reps;
  std::uint64_t seed;
};

/// Monte Carlo mean of V_N. Replication r uses CounterStream(seed, r) and
/// results are reduced in replication order, so output is bit-identical for
/// any worker count. Throws NotPSD or ZeroReps.
SimResult simulate_dispersion(const SimConfig& config);

struct DecayPoint {
  std::size_t n;
  double var_vn;
  double mean_vn;
};

/// Var(V_N) for equicorrelated N(0, sigma^2) universes of each size in
/// n_list; each size draws from an independent seed derived from (seed, n).
std::vector<DecayPoint> variance_decay_study(double rho, double sigma,
                                             std::span<const std::size_t> n_list,
                                             std::size_t reps, std::uint64_t seed,
                                             unsigned workers = 1);

}  // namespace bubbles
