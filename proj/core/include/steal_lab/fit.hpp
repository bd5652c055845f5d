#pragma once

#include <span>
#include <utility>

namespace steal_lab {

struct FitResult {
  double slope = 0;
  double intercept = 0;  // natural log
  double r2 = 0;
};

/// Least squares on (ln x, ln y). Needs >= 3 points with positive
/// coordinates; throws std::invalid_argument otherwise.
FitResult loglog_fit(std::span<const std::pair<double, double>> points);

}  // namespace steal_lab
