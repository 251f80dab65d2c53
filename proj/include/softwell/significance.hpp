#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "softwell/track.hpp"
#include "softwell/types.hpp"

namespace softwell::significance {

/// Indicators a surrogate test can score.
inline const std::vector<std::string>& default_indicators() {
  static const std::vector<std::string> v = {"c_emp", "n2", "gamma"};
  return v;
}

/// Histogram of an indicator over matched linear surrogates plus the
/// observed value's tail percentile.
struct SurrogateReport {
  std::string indicator_name;
  double observed_mean = 0.0;   ///< mean of the indicator over all windows
  std::vector<double> surrogate_values;  ///< one mean per surrogate series
  /// 100 * (#below + #equal/2) / #valid; NaN surrogate means are excluded.
  double percentile = 0.0;
  std::size_t n_surrogates = 0;
  double matched_kappa = 0.0;
  double matched_sigma2 = 0.0;
  std::size_t matched_length = 0;
  double matched_dt = 0.0;
  std::uint64_t config_digest = 0;
};

/// Runs the indicator track on ts, generates n_surrogates linear series
/// matched in decay rate, noise variance, length and spacing (surrogate i
/// is seeded with seed xor i), analyzes each with the identical
/// configuration and reports the observed mean against the surrogate
/// histogram. Throws ComputeError when the decay rate of the real series
/// is out of domain, so no matched surrogate exists.
std::vector<SurrogateReport> surrogate_test(
    const TimeSeries& ts, const estimators::TrackConfig& config,
    const std::vector<std::string>& indicator_set = default_indicators(),
    std::size_t n_surrogates = 500, std::uint64_t seed = 0);

/// Surrogate percentiles over a grid of method parameters (window length
/// and detrending bandwidth as fractions of the series length).
struct SensitivityGrid {
  std::vector<double> window_fractions;     ///< strictly increasing
  std::vector<double> bandwidth_fractions;  ///< strictly increasing
  std::vector<std::string> indicators;
  /// percentile[k][i * n_wf + j] for indicator k, bandwidth row i,
  /// window column j; failed cells are NaN.
  std::vector<std::vector<double>> percentile;

  double at(std::size_t indicator, std::size_t bw_row, std::size_t wf_col) const {
    return percentile[indicator][bw_row * window_fractions.size() + wf_col];
  }
};

/// Reruns the full surrogate test for every (window, bandwidth) pair.
/// Each cell regenerates its own surrogate ensemble (the matched decay
/// rate changes with the method parameters) from a seed derived from the
/// base seed and the cell index. Per-cell failures are stored as missing
/// cells, never propagate.
SensitivityGrid sensitivity_scan(
    const TimeSeries& ts, const std::vector<double>& window_fractions,
    const std::vector<double>& bandwidth_fractions,
    const estimators::TrackConfig& base,
    const std::vector<std::string>& indicator_set = default_indicators(),
    std::size_t n_surrogates = 500, std::uint64_t seed = 0);

/// Contour levels used for the sensitivity export: 10, 20, ..., 90, 95.
std::vector<double> contour_levels();

/// A single iso-percentile segment in (log2 window fraction,
/// log2 bandwidth fraction) coordinates, from marching squares.
struct ContourSegment {
  std::string indicator;
  double level = 0.0;
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
};

/// Iso-percentile segments of a sensitivity grid at the standard levels.
std::vector<ContourSegment> contour_segments(const SensitivityGrid& grid);

}  // namespace softwell::significance
