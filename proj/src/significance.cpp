#include "softwell/significance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "softwell/dynamics.hpp"
#include "softwell/errors.hpp"

namespace softwell::significance {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

double tail_percentile(double observed, const std::vector<double>& values) {
  std::size_t below = 0, equal = 0, valid = 0;
  for (double v : values) {
    if (std::isnan(v)) continue;
    ++valid;
    if (v < observed) ++below;
    else if (v == observed) ++equal;
  }
  if (valid == 0) return kNaN;
  return 100.0 * (static_cast<double>(below) + 0.5 * static_cast<double>(equal)) /
         static_cast<double>(valid);
}

}  // namespace

std::vector<SurrogateReport> surrogate_test(
    const TimeSeries& ts, const estimators::TrackConfig& config,
    const std::vector<std::string>& indicator_set, std::size_t n_surrogates,
    std::uint64_t seed) {
  if (indicator_set.empty())
    throw InvalidArgument("surrogate_test: empty indicator set");
  if (n_surrogates == 0)
    throw InvalidArgument("surrogate_test: need at least one surrogate");

  const estimators::IndicatorTrack observed = estimators::indicator_track(ts, config);

  const auto matched_kappa = observed.mean_of("kappa_acf");
  if (!matched_kappa || !(*matched_kappa > 0))
    throw ComputeError(
        "surrogate_test: kappa_acf is out of domain on the input series; "
        "no matched linear surrogate exists");
  const auto matched_sigma2 = observed.mean_of("sigma2_emp");
  if (!matched_sigma2 || !(*matched_sigma2 > 0))
    throw ComputeError(
        "surrogate_test: no usable noise-variance estimate on the input series");

  const double dt = observed.dt;
  const std::size_t length = observed.series_length;
  const double sigma = std::sqrt(*matched_sigma2);

  std::vector<SurrogateReport> reports(indicator_set.size());
  for (std::size_t k = 0; k < indicator_set.size(); ++k) {
    auto& rep = reports[k];
    rep.indicator_name = indicator_set[k];
    rep.observed_mean = observed.mean_of(indicator_set[k].c_str()).value_or(kNaN);
    rep.surrogate_values.assign(n_surrogates, kNaN);
    rep.n_surrogates = n_surrogates;
    rep.matched_kappa = *matched_kappa;
    rep.matched_sigma2 = *matched_sigma2;
    rep.matched_length = length;
    rep.matched_dt = dt;
    rep.config_digest = observed.config_digest;
  }

  for (std::size_t i = 0; i < n_surrogates; ++i) {
    const TimeSeries surrogate = dynamics::simulate_linear(
        *matched_kappa, sigma, dt, length, seed ^ static_cast<std::uint64_t>(i));
    try {
      const estimators::IndicatorTrack track =
          estimators::indicator_track(surrogate, config);
      // The identical configuration must be used on both sides.
      if (track.config_digest != observed.config_digest)
        throw ComputeError("surrogate_test: configuration digest mismatch");
      for (std::size_t k = 0; k < indicator_set.size(); ++k)
        reports[k].surrogate_values[i] =
            track.mean_of(indicator_set[k].c_str()).value_or(kNaN);
    } catch (const Error&) {
      // this surrogate contributes nothing
    }
  }

  for (auto& rep : reports)
    rep.percentile = std::isnan(rep.observed_mean)
                         ? kNaN
                         : tail_percentile(rep.observed_mean, rep.surrogate_values);
  return reports;
}

SensitivityGrid sensitivity_scan(const TimeSeries& ts,
                                 const std::vector<double>& window_fractions,
                                 const std::vector<double>& bandwidth_fractions,
                                 const estimators::TrackConfig& base,
                                 const std::vector<std::string>& indicator_set,
                                 std::size_t n_surrogates, std::uint64_t seed) {
  if (window_fractions.empty() || bandwidth_fractions.empty())
    throw InvalidArgument("sensitivity_scan: empty axis");
  for (std::size_t i = 1; i < window_fractions.size(); ++i)
    if (!(window_fractions[i] > window_fractions[i - 1]))
      throw InvalidArgument("sensitivity_scan: window fractions must increase");
  for (std::size_t i = 1; i < bandwidth_fractions.size(); ++i)
    if (!(bandwidth_fractions[i] > bandwidth_fractions[i - 1]))
      throw InvalidArgument("sensitivity_scan: bandwidth fractions must increase");

  SensitivityGrid grid;
  grid.window_fractions = window_fractions;
  grid.bandwidth_fractions = bandwidth_fractions;
  grid.indicators = indicator_set;
  const std::size_t nw = window_fractions.size();
  const std::size_t nb = bandwidth_fractions.size();
  grid.percentile.assign(indicator_set.size(), std::vector<double>(nw * nb, kNaN));

  for (std::size_t bi = 0; bi < nb; ++bi) {
    for (std::size_t wj = 0; wj < nw; ++wj) {
      estimators::TrackConfig cfg = base;
      cfg.window = window_fractions[wj];
      cfg.detrend_bandwidth = bandwidth_fractions[bi];
      const std::uint64_t cell_seed = splitmix64(
          seed ^ splitmix64((static_cast<std::uint64_t>(bi) << 32) |
                            static_cast<std::uint64_t>(wj)));
      try {
        const auto reports =
            surrogate_test(ts, cfg, indicator_set, n_surrogates, cell_seed);
        for (std::size_t k = 0; k < reports.size(); ++k)
          grid.percentile[k][bi * nw + wj] = reports[k].percentile;
      } catch (const Error&) {
        // missing cell
      }
    }
  }
  return grid;
}

std::vector<double> contour_levels() {
  return {10, 20, 30, 40, 50, 60, 70, 80, 90, 95};
}

namespace {

// Linear interpolation of the level crossing between two grid corners.
double cross(double va, double vb, double a, double b, double level) {
  return a + (level - va) / (vb - va) * (b - a);
}

}  // namespace

std::vector<ContourSegment> contour_segments(const SensitivityGrid& grid) {
  std::vector<ContourSegment> segments;
  const std::size_t nw = grid.window_fractions.size();
  const std::size_t nb = grid.bandwidth_fractions.size();
  std::vector<double> xs(nw), ys(nb);
  for (std::size_t j = 0; j < nw; ++j) xs[j] = std::log2(grid.window_fractions[j]);
  for (std::size_t i = 0; i < nb; ++i) ys[i] = std::log2(grid.bandwidth_fractions[i]);

  for (std::size_t k = 0; k < grid.indicators.size(); ++k) {
    for (double level : contour_levels()) {
      for (std::size_t i = 0; i + 1 < nb; ++i) {
        for (std::size_t j = 0; j + 1 < nw; ++j) {
          const double v00 = grid.at(k, i, j);       // (x0, y0)
          const double v01 = grid.at(k, i, j + 1);   // (x1, y0)
          const double v10 = grid.at(k, i + 1, j);   // (x0, y1)
          const double v11 = grid.at(k, i + 1, j + 1);
          if (std::isnan(v00) || std::isnan(v01) || std::isnan(v10) ||
              std::isnan(v11))
            continue;
          const double x0 = xs[j], x1 = xs[j + 1], y0 = ys[i], y1 = ys[i + 1];

          // Marching squares: collect the edge crossings of this cell.
          struct Pt { double x, y; };
          std::vector<Pt> pts;
          auto edge = [&](double va, double vb, Pt pa, Pt pb) {
            if ((va < level) != (vb < level)) {
              if (pa.y == pb.y)
                pts.push_back({cross(va, vb, pa.x, pb.x, level), pa.y});
              else
                pts.push_back({pa.x, cross(va, vb, pa.y, pb.y, level)});
            }
          };
          edge(v00, v01, {x0, y0}, {x1, y0});
          edge(v01, v11, {x1, y0}, {x1, y1});
          edge(v10, v11, {x0, y1}, {x1, y1});
          edge(v00, v10, {x0, y0}, {x0, y1});
          if (pts.size() == 2) {
            segments.push_back({grid.indicators[k], level, pts[0].x, pts[0].y,
                                pts[1].x, pts[1].y});
          } else if (pts.size() == 4) {
            // Saddle cell: split by pairing crossings in collection order.
            segments.push_back({grid.indicators[k], level, pts[0].x, pts[0].y,
                                pts[1].x, pts[1].y});
            segments.push_back({grid.indicators[k], level, pts[2].x, pts[2].y,
                                pts[3].x, pts[3].y});
          }
        }
      }
    }
  }
  return segments;
}

}  // namespace softwell::significance
