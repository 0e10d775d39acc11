#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "scaledgauge/error.hpp"

namespace scaledgauge {

struct ConvergenceFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::vector<std::pair<double, double>> points;  // (h, error)
};

/// Least-squares fit of log(error) = intercept + slope * log(h).
inline ConvergenceFit fit_loglog(const std::vector<double>& h, const std::vector<double>& error) {
  if (h.size() != error.size() || h.size() < 2) {
    throw Error(ErrorKind::kInvalidArgument, "convergence fit needs at least two matching points");
  }
  ConvergenceFit fit;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (!(h[i] > 0.0) || !(error[i] > 0.0)) {
      throw Error(ErrorKind::kInvalidArgument, "log-log fit needs positive values");
    }
    const double x = std::log(h[i]);
    const double y = std::log(error[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    fit.points.emplace_back(h[i], error[i]);
  }
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
  return fit;
}

}  // namespace scaledgauge
