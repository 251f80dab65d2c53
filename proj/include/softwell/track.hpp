#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "softwell/detrend.hpp"
#include "softwell/kde.hpp"
#include "softwell/types.hpp"

namespace softwell::estimators {

/// Sliding-window analysis configuration. Lengths at or below 1 are
/// fractions of the series length, larger values are sample counts.
struct TrackConfig {
  double window = 0.5;            ///< sliding window length (w = N/2 default)
  std::size_t step = 1;           ///< window advance in samples
  double detrend_bandwidth = 0.0; ///< 0 = N/20 samples; <=1 fraction; >1 samples
  KdeConfig kde;
  std::size_t min_window = 30;

  struct Resolved {
    std::size_t window_samples = 0;
    std::size_t step = 1;
    double detrend_bandwidth_time = 0.0;
    KdeConfig kde;
    std::size_t min_window = 30;
  };
  /// Materializes every default against a concrete series length/spacing.
  Resolved resolve(std::size_t n, double dt) const;

  /// FNV-1a digest of the resolved configuration; used to assert that
  /// surrogates are analyzed exactly like the observed series.
  std::uint64_t digest(std::size_t n, double dt) const;
};

/// Per-window estimates. Fields are empty where the window failed
/// (out-of-domain propagator, degenerate density, ...); a failed window
/// is a gap in the track, never an abort.
struct WindowIndicators {
  double t_center = 0.0;
  std::optional<double> kappa_acf;   ///< decay rate from autocorrelation
  std::optional<double> kappa_u;     ///< density-based decay rate (sigma^-2 kappa)
  std::optional<double> c_emp;       ///< linear-fit flux proxy
  std::optional<double> n2;          ///< quadratic coefficient
  std::optional<double> c_emp2;      ///< flux constant of the quadratic fit
  std::optional<double> gamma;       ///< skewness of the window density
  std::optional<double> sigma2_emp;  ///< kappa_acf / kappa_u
  double alpha = 0.0;                ///< raw AR(1) coefficient
};

/// A full indicator track plus what is needed to interpret it.
struct IndicatorTrack {
  std::vector<WindowIndicators> windows;
  std::vector<double> x_eq_center;  ///< trend value at each window center
  DetrendResult detrend;
  double dt = 0.0;
  std::size_t series_length = 0;
  std::uint64_t config_digest = 0;

  /// Mean of one indicator over all windows where it is present.
  std::optional<double> mean_of(const char* indicator) const;
};

/// Detrends once over the full series, then estimates the density and all
/// indicators in sliding windows [t - w/2, t + w/2]. Windows are
/// center-determined: tracks with different steps agree bitwise at shared
/// centers. Per-window errors become gaps.
IndicatorTrack indicator_track(const TimeSeries& ts, const TrackConfig& config);

/// Slope of kappa_acf against the equilibrium estimate over a track.
/// The normal-form relation a = ratio/2 converts the slope into the
/// quadratic coefficient of dx = (mu - a x^2) dt + sigma dW.
struct DriftRatio {
  double ratio = 0.0;       ///< d kappa / d x_eq
  double quad_coeff = 0.0;  ///< ratio / 2
};

/// Empty when the track has no equilibrium drift to regress against.
/// Throws InvalidArgument when fewer than 2 windows carry finite kappa.
std::optional<DriftRatio> drift_ratio(const IndicatorTrack& track);

/// Empirical potential surface U_emp(x, t) with its deviation from the
/// per-window parabolic (linear theory) fit.
struct PotentialSurface {
  std::vector<double> time_centers;
  std::vector<double> state_grid;
  /// Row-major [window][grid] matrices; masked entries are NaN.
  std::vector<double> u_emp;
  std::vector<double> parabola_dev;
  std::vector<std::uint8_t> support_mask;

  std::size_t n_windows() const { return time_centers.size(); }
  std::size_t n_states() const { return state_grid.size(); }
  double at(const std::vector<double>& m, std::size_t w, std::size_t g) const {
    return m[w * n_states() + g];
  }
};

/// One column of the surface from a density and a noise-variance
/// estimate: U = -(sigma2/2) log p on supported points and its deviation
/// from the least-squares parabola.
struct PotentialColumn {
  std::vector<double> u;
  std::vector<double> parabola_dev;
  std::vector<std::uint8_t> support;
};
PotentialColumn potential_from_density(const Density& density, double sigma2);

/// Per-window empirical potential over a shared state grid. Windows whose
/// estimates fail become fully masked columns.
PotentialSurface potential_surface(const TimeSeries& ts, const TrackConfig& config);

}  // namespace softwell::estimators
