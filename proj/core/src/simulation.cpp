#include "bubbles/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <variant>

#include <Eigen/Dense>

#include "bubbles/error.hpp"
#include "bubbles/moments.hpp"
#include "bubbles/parallel.hpp"

namespace bubbles {

namespace {

Eigen::MatrixXd dense_correlation(const CorrelationSpec& spec) {
  const auto n = static_cast<Eigen::Index>(spec.size());
  Eigen::MatrixXd r(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      r(i, j) = spec.correlation(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    }
  }
  return r;
}

double equicorrelation_min_eigenvalue(std::size_t n, double rho) {
  if (n == 1) return 1.0;
  return std::min(1.0 - rho, 1.0 + static_cast<double>(n - 1) * rho);
}

}  // namespace

FeasibilityReport validate_feasibility(const CorrelationSpec& spec) {
  double min_eig;
  if (const auto* e = std::get_if<Equicorrelation>(&spec.structure())) {
    min_eig = equicorrelation_min_eigenvalue(spec.size(), e->rho);
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense_correlation(spec),
                                                          Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
      return {false, std::nan(""), "eigendecomposition failed"};
    }
    min_eig = solver.eigenvalues().minCoeff();
  }
  if (min_eig < -kPsdTolerance) {
    return {false, min_eig,
            "correlation matrix is not positive semidefinite (min eigenvalue " +
                std::to_string(min_eig) + ")"};
  }
  return {true, min_eig, {}};
}

GaussianSampler::GaussianSampler(const CorrelationSpec& spec)
    : means_(spec.means()), sigmas_(spec.sigmas()) {
  const auto report = validate_feasibility(spec);
  if (!report.feasible) throw Error(ErrorCode::kNotPSD, report.reason);

  const std::size_t n = spec.size();
  if (const auto* e = std::get_if<Equicorrelation>(&spec.structure())) {
    rho_ = e->rho;
    kind_ = rho_ >= 0.0 ? Kind::kOneFactor : Kind::kNegativeEqui;
    return;
  }
  kind_ = Kind::kDense;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense_correlation(spec));
  const Eigen::VectorXd root = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Eigen::MatrixXd l = solver.eigenvectors() * root.asDiagonal();
  factor_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      factor_[i * n + j] = l(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
}

void GaussianSampler::sample(CounterStream& rng, std::span<double> out) const {
  const std::size_t n = means_.size();
  if (out.size() != n) throw Error(ErrorCode::kDimensionMismatch, "output size");
  switch (kind_) {
    case Kind::kOneFactor: {
      const double a = std::sqrt(rho_);
      const double b = std::sqrt(1.0 - rho_);
      const double common = a * rng.normal();
      for (std::size_t i = 0; i < n; ++i) {
        out[i] = means_[i] + sigmas_[i] * (common + b * rng.normal());
      }
      return;
    }
    case Kind::kNegativeEqui: {
      const double b = std::sqrt(1.0 - rho_);
      const double c = std::sqrt(std::max(0.0, 1.0 + static_cast<double>(n - 1) * rho_));
      double sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        out[i] = rng.normal();
        sum += out[i];
      }
      const double avg = sum / static_cast<double>(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double z = b * (out[i] - avg) + c * avg;
        out[i] = means_[i] + sigmas_[i] * z;
      }
      return;
    }
    case Kind::kDense: {
      thread_local std::vector<double> eps;
      eps.resize(n);
      for (std::size_t j = 0; j < n; ++j) eps[j] = rng.normal();
      for (std::size_t i = 0; i < n; ++i) {
        double z = 0.0;
        const double* row = factor_.data() + i * n;
        for (std::size_t j = 0; j < n; ++j) z += row[j] * eps[j];
        out[i] = means_[i] + sigmas_[i] * z;
      }
      return;
    }
  }
}

std::vector<double> sample_gaussian_vector(const CorrelationSpec& spec, CounterStream& rng) {
  GaussianSampler sampler(spec);
  std::vector<double> out(sampler.dimension());
  sampler.sample(rng, out);
  return out;
}

SimResult simulate_dispersion(const SimConfig& config) {
  if (config.reps == 0) throw Error(ErrorCode::kZeroReps, "at least one replication is required");
  const GaussianSampler sampler(config.spec);
  const std::size_t n = sampler.dimension();
  if (n < 2) throw Error(ErrorCode::kTooFewStocks, "V_N needs at least 2 stocks");

  std::vector<double> vn(config.reps);
  const unsigned workers = resolve_workers(config.workers);
  const std::size_t blocks = std::min<std::size_t>(workers, config.reps);
  const std::size_t per_block = (config.reps + blocks - 1) / blocks;
  parallel_for(blocks, workers, [&](std::size_t b) {
    std::vector<double> draw(n);
    const std::size_t end = std::min(config.reps, (b + 1) * per_block);
    for (std::size_t r = b * per_block; r < end; ++r) {
      CounterStream rng(config.seed, r);
      sampler.sample(rng, draw);
      vn[r] = cross_sectional_moments(draw).variance;
    }
  });

  const double m = static_cast<double>(config.reps);
  double sum = 0.0;
  for (double v : vn) sum += v;
  const double mean = sum / m;
  double ss = 0.0;
  for (double v : vn) ss += (v - mean) * (v - mean);
  const double var = config.reps > 1 ? ss / (m - 1.0) : 0.0;

  SimResult result{mean, std::sqrt(var / m), var, {}, n, config.reps, config.seed};
  if (config.keep_per_rep) result.per_rep = std::move(vn);
  return result;
}

std::vector<DecayPoint> variance_decay_study(double rho, double sigma,
                                             std::span<const std::size_t> n_list,
                                             std::size_t reps, std::uint64_t seed,
                                             unsigned workers) {
  std::vector<DecayPoint> out;
  out.reserve(n_list.size());
  for (auto n : n_list) {
    const auto res = simulate_dispersion(
        {CorrelationSpec::equicorrelated(n, rho, sigma), reps, mix64(seed ^ mix64(n)), false,
         workers});
    out.push_back({n, res.var_vn, res.mean_vn});
  }
  return out;
}

}  // namespace bubbles
