#include "steal_lab/fit.hpp"

#include <cmath>
#include <stdexcept>

namespace steal_lab {

FitResult loglog_fit(std::span<const std::pair<double, double>> points) {
  if (points.size() < 3) throw std::invalid_argument("loglog_fit: need at least 3 points");
  double sx = 0, sy = 0;
  for (const auto& [x, y] : points) {
    if (!(x > 0 && y > 0)) throw std::invalid_argument("loglog_fit: coordinates must be positive");
    sx += std::log(x);
    sy += std::log(y);
  }
  const double k = static_cast<double>(points.size());
  const double mx = sx / k, my = sy / k;
  double sxx = 0, sxy = 0, syy = 0;
  for (const auto& [x, y] : points) {
    const double dx = std::log(x) - mx, dy = std::log(y) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0) throw std::invalid_argument("loglog_fit: all x values are equal");
  FitResult f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy == 0 ? 1.0 : std::min(1.0, (sxy * sxy) / (sxx * syy));
  return f;
}

}  // namespace steal_lab
