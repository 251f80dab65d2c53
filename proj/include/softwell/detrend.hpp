#pragma once

#include "softwell/types.hpp"

namespace softwell::estimators {

/// Result of the equilibrium (zero-order) estimate.
struct DetrendResult {
  std::vector<double> trend;     ///< smoothed equilibrium at each sample time
  std::vector<double> residual;  ///< value - trend; reconstructs the input exactly
  double bandwidth = 0.0;        ///< kernel width actually used, in time units
};

/// Gaussian-kernel weighted moving average with boundary renormalization
/// (weights always sum to one, so edges are handled without padding).
/// bandwidth is in the units of ts.times. Throws InvalidArgument for
/// fewer than 3 samples or a bandwidth below the minimum sample spacing,
/// where the trend would interpolate noise.
DetrendResult detrend(const TimeSeries& ts, double bandwidth);

}  // namespace softwell::estimators
