#pragma once

#include <optional>
#include <span>

#include "softwell/types.hpp"

namespace softwell::estimators {

/// Controls for the sliding-window density estimate.
struct KdeConfig {
  int n_grid = 401;              ///< output grid resolution
  double bandwidth = 0.0;        ///< fixed bandwidth; 0 selects automatically
  double support_floor = 1e-3;   ///< support mask threshold, relative to max p
  int selector_bins = 1024;      ///< dyadic mesh of the bandwidth selector
  /// Optional explicit evaluation span; default is [min-3h, max+3h].
  std::optional<double> grid_lo, grid_hi;
};

/// Gaussian kernel density estimate of a detrended window with a
/// data-driven bandwidth: the diffusion (improved Sheather-Jones) fixed
/// point by default, Silverman's rule when the fixed point has no root.
/// p and dp are the kernel sum and its analytic derivative evaluated on
/// a uniform grid spanning [min-3h, max+3h]. Throws InvalidArgument for
/// windows of fewer than 30 samples.
Density estimate_density(std::span<const double> samples,
                         const KdeConfig& config = {});

/// Diffusion / improved Sheather-Jones bandwidth. Returns nothing when
/// the fixed-point iteration fails to bracket a root.
std::optional<double> isj_bandwidth(std::span<const double> samples,
                                    int n_bins = 1024);

/// Silverman's rule of thumb: 0.9 min(sd, IQR/1.34) n^(-1/5).
double silverman_bandwidth(std::span<const double> samples);

}  // namespace softwell::estimators
