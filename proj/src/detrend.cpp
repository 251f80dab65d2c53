#include "softwell/detrend.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "softwell/errors.hpp"

namespace softwell::estimators {

namespace {

// The Gaussian weight is below 1e-14 past eight bandwidths; everything
// further contributes nothing at double precision.
constexpr double kKernelCut = 8.0;

}  // namespace

DetrendResult detrend(const TimeSeries& ts, double bandwidth) {
  ts.validate();
  const std::size_t n = ts.size();
  if (n < 3) throw InvalidArgument("detrend: need at least 3 samples");
  if (!(bandwidth > 0)) throw InvalidArgument("detrend: bandwidth must be > 0");

  double min_spacing = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < n; ++i)
    min_spacing = std::min(min_spacing, ts.times[i] - ts.times[i - 1]);
  if (bandwidth < min_spacing)
    throw InvalidArgument(
        "detrend: bandwidth below the sample spacing would interpolate noise");

  DetrendResult out;
  out.bandwidth = bandwidth;
  out.trend.resize(n);
  out.residual.resize(n);

  if (ts.uniform_dt) {
    // Uniform spacing: one kernel table indexed by lag.
    const double dt = *ts.uniform_dt;
    const auto reach = std::min<std::size_t>(
        n - 1, static_cast<std::size_t>(std::ceil(kKernelCut * bandwidth / dt)));
    std::vector<double> kernel(reach + 1);
    for (std::size_t m = 0; m <= reach; ++m) {
      const double z = static_cast<double>(m) * dt / bandwidth;
      kernel[m] = std::exp(-0.5 * z * z);
    }
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t j0 = k >= reach ? k - reach : 0;
      const std::size_t j1 = std::min(n - 1, k + reach);
      double num = 0.0, den = 0.0;
      for (std::size_t j = j0; j <= j1; ++j) {
        const double w = kernel[j > k ? j - k : k - j];
        num += w * ts.values[j];
        den += w;
      }
      out.trend[k] = num / den;
    }
  } else {
    for (std::size_t k = 0; k < n; ++k) {
      double num = 0.0, den = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double z = (ts.times[k] - ts.times[j]) / bandwidth;
        if (std::abs(z) > kKernelCut) continue;
        const double w = std::exp(-0.5 * z * z);
        num += w * ts.values[j];
        den += w;
      }
      out.trend[k] = num / den;
    }
  }

  for (std::size_t k = 0; k < n; ++k)
    out.residual[k] = ts.values[k] - out.trend[k];
  return out;
}

}  // namespace softwell::estimators
