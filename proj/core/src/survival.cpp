#include "bubbles/survival.hpp"

#include <algorithm>

#include "bubbles/error.hpp"

namespace bubbles {

double survival_value(std::span<const double> x, double z) {
  if (x.empty()) throw Error(ErrorCode::kEmptyCrossSection, "survival of empty cross-section");
  const auto above = std::count_if(x.begin(), x.end(), [z](double v) { return v > z; });
  return static_cast<double>(above) / static_cast<double>(x.size());
}

SurvivalCurve::SurvivalCurve(std::span<const double> x) : sorted_(x.begin(), x.end()) {
  if (sorted_.empty()) throw Error(ErrorCode::kEmptyCrossSection, "survival curve of empty cross-section");
  std::sort(sorted_.begin(), sorted_.end());
}

double SurvivalCurve::operator()(double z) const {
  const auto first_above = std::upper_bound(sorted_.begin(), sorted_.end(), z);
  return static_cast<double>(sorted_.end() - first_above) /
         static_cast<double>(sorted_.size());
}

std::vector<StepPoint> SurvivalCurve::step_points() const {
  std::vector<StepPoint> points;
  const double n = static_cast<double>(sorted_.size());
  for (std::size_t i = 0; i < sorted_.size(); ++i) {
    if (i + 1 < sorted_.size() && sorted_[i + 1] == sorted_[i]) continue;
    points.push_back({sorted_[i], static_cast<double>(sorted_.size() - i - 1) / n});
  }
  return points;
}

}  // namespace bubbles
