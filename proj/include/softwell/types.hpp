#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace softwell {

/// Timestamped scalar samples. The universal currency of simulation,
/// ingestion and analysis.
struct TimeSeries {
  std::vector<double> times;   ///< strictly increasing timestamps
  std::vector<double> values;  ///< finite scalar samples, same length
  /// Common spacing when the series is uniform. Analysis operations
  /// that need a lag (e.g. the AR(1) fit) require it.
  std::optional<double> uniform_dt;
  /// Set when the series ended by escape; censored_index is the index of
  /// the last (offending) sample.
  bool censored = false;
  std::size_t censored_index = 0;

  std::size_t size() const { return values.size(); }

  /// Throws InvalidArgument when an invariant is broken (lengths differ,
  /// non-increasing times, non-finite values, spacing off uniform_dt by
  /// more than 1e-9 relative).
  void validate() const;
};

/// How the KDE bandwidth of a Density came about.
enum class BandwidthMethod : std::uint8_t {
  isj,        ///< improved Sheather-Jones / diffusion fixed point
  silverman,  ///< rule-of-thumb fallback
  fixed,      ///< caller supplied
  histogram,  ///< bin width of a histogram density (ensemble pooling)
  degenerate  ///< jitter guard for zero-spread samples
};

/// A probability density on a grid together with its derivative.
/// The hub of all nonlinear estimation.
struct Density {
  std::vector<double> grid;  ///< ascending abscissae
  std::vector<double> p;     ///< density values, >= 0, integrates to ~1
  std::vector<double> dp;    ///< derivative of p on the same grid
  double bandwidth = 0.0;    ///< KDE bandwidth or bin width
  std::size_t n_samples = 0; ///< samples behind the estimate
  /// True where p exceeds the support floor (default 1e-3 * max p);
  /// fits and the potential surface only use supported points.
  std::vector<std::uint8_t> support_mask;
  BandwidthMethod bandwidth_method = BandwidthMethod::fixed;

  std::size_t size() const { return grid.size(); }
  std::size_t supported_count() const;
  double max_p() const;

  /// Trapezoid integral of f(x) * p(x) over the grid.
  double integrate_against(const std::vector<double>& f) const;
  /// Trapezoid moments of the density: mean, variance, skewness.
  void moments(double& mean, double& variance, double& skewness) const;

  void validate() const;
};

}  // namespace softwell
