#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bubbles {

/// Fraction of the cross-section strictly above z: (1/N) #{i : x_i > z}.
/// Throws EmptyCrossSection for empty input.
double survival_value(std::span<const double> x, double z);

/// One point of the exported step function: S_N evaluated at a sample value.
struct StepPoint {
  double z;
  double survival;
};

/// Empirical spatial survival function of one date's cross-section.
///
/// The curve is right-continuous and non-increasing, with values in
/// {0, 1/N, ..., 1}. It drops at each distinct sample value.
class SurvivalCurve {
 public:
  explicit SurvivalCurve(std::span<const double> x);

  double operator()(double z) const;

  std::size_t size() const { return sorted_.size(); }
  const std::vector<double>& sorted_values() const { return sorted_; }

  /// (z, S_N(z)) at every distinct sample value, ascending in z. The last
  /// point always has survival 0.
  std::vector<StepPoint> step_points() const;

 private:
  std::vector<double> sorted_;
};

}  // namespace bubbles
