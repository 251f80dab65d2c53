#include "softwell/track.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "softwell/csv.hpp"
#include "softwell/errors.hpp"
#include "softwell/fits.hpp"
#include "softwell/util.hpp"

namespace softwell::estimators {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

TrackConfig::Resolved TrackConfig::resolve(std::size_t n, double dt) const {
  if (n < 3) throw InvalidArgument("track: series too short");
  if (!(dt > 0)) throw InvalidArgument("track: dt must be > 0");
  Resolved r;
  r.min_window = min_window;
  r.kde = kde;
  r.step = step == 0 ? 1 : step;

  const double w = window <= 1.0 ? window * static_cast<double>(n) : window;
  r.window_samples = static_cast<std::size_t>(std::llround(w));
  if (r.window_samples < min_window)
    throw InvalidArgument("track: window of " + std::to_string(r.window_samples) +
                          " samples is below the minimum of " +
                          std::to_string(min_window));
  if (r.window_samples > n)
    throw InvalidArgument("track: window exceeds the series length");

  double bw = detrend_bandwidth;
  if (bw == 0.0) bw = static_cast<double>(n) / 20.0;
  else if (bw <= 1.0) bw *= static_cast<double>(n);
  r.detrend_bandwidth_time = bw * dt;
  return r;
}

std::uint64_t TrackConfig::digest(std::size_t n, double dt) const {
  const Resolved r = resolve(n, dt);
  std::ostringstream s;
  s << "w=" << r.window_samples << ";step=" << r.step
    << ";bw=" << io::format_double(r.detrend_bandwidth_time)
    << ";kde_grid=" << r.kde.n_grid
    << ";kde_bw=" << io::format_double(r.kde.bandwidth)
    << ";floor=" << io::format_double(r.kde.support_floor)
    << ";bins=" << r.kde.selector_bins << ";n=" << n
    << ";dt=" << io::format_double(dt);
  return util::fnv1a(s.str());
}

namespace {

WindowIndicators analyze_window(std::span<const double> window, double t_center,
                                double dt, const KdeConfig& kde_cfg) {
  WindowIndicators w;
  w.t_center = t_center;
  w.alpha = kNaN;

  try {
    const AcfFit acf = fit_kappa_acf(window, dt);
    w.alpha = acf.alpha;
    if (acf.kappa) w.kappa_acf = *acf.kappa;
  } catch (const Error&) {
    // zero-variance window: leave the gap
  }

  try {
    const Density density = estimate_density(window, kde_cfg);
    try {
      const Fp1Fit fp1 = fit_fp1(density);
      w.kappa_u = fp1.kappa_u;
      w.c_emp = fp1.c_emp;
    } catch (const Error&) {
    }
    try {
      const Fp2Fit fp2 = fit_fp2(density);
      w.n2 = fp2.n2;
      w.c_emp2 = fp2.c_emp2;
    } catch (const Error&) {
    }
    try {
      w.gamma = skewness(density);
    } catch (const Error&) {
    }
  } catch (const Error&) {
    // density unusable: all density-based indicators stay empty
  }

  if (w.kappa_acf && w.kappa_u && *w.kappa_u > 0)
    w.sigma2_emp = *w.kappa_acf / *w.kappa_u;
  return w;
}

}  // namespace

std::optional<double> IndicatorTrack::mean_of(const char* indicator) const {
  const std::string name(indicator);
  double acc = 0.0;
  std::size_t count = 0;
  for (const auto& w : windows) {
    const std::optional<double>* field = nullptr;
    if (name == "kappa_acf") field = &w.kappa_acf;
    else if (name == "kappa_u") field = &w.kappa_u;
    else if (name == "c_emp") field = &w.c_emp;
    else if (name == "n2") field = &w.n2;
    else if (name == "c_emp2") field = &w.c_emp2;
    else if (name == "gamma") field = &w.gamma;
    else if (name == "sigma2_emp") field = &w.sigma2_emp;
    else throw InvalidArgument("unknown indicator: " + name);
    if (field->has_value() && std::isfinite(**field)) {
      acc += **field;
      ++count;
    }
  }
  if (count == 0) return std::nullopt;
  return acc / static_cast<double>(count);
}

IndicatorTrack indicator_track(const TimeSeries& ts, const TrackConfig& config) {
  ts.validate();
  if (!ts.uniform_dt)
    throw InvalidArgument("indicator_track: uniform spacing required; resample first");
  const double dt = *ts.uniform_dt;
  const std::size_t n = ts.size();
  const auto r = config.resolve(n, dt);

  IndicatorTrack track;
  track.dt = dt;
  track.series_length = n;
  track.config_digest = config.digest(n, dt);
  track.detrend = detrend(ts, r.detrend_bandwidth_time);

  const std::size_t w = r.window_samples;
  for (std::size_t s = 0; s + w <= n; s += r.step) {
    const double t_center = 0.5 * (ts.times[s] + ts.times[s + w - 1]);
    track.windows.push_back(analyze_window(
        std::span<const double>(track.detrend.residual).subspan(s, w), t_center,
        dt, r.kde));
    track.x_eq_center.push_back(0.5 * (track.detrend.trend[s + (w - 1) / 2] +
                                       track.detrend.trend[s + w / 2]));
  }
  return track;
}

std::optional<DriftRatio> drift_ratio(const IndicatorTrack& track) {
  std::vector<double> xs, ks;
  for (std::size_t i = 0; i < track.windows.size(); ++i) {
    const auto& kappa = track.windows[i].kappa_acf;
    if (kappa && std::isfinite(*kappa)) {
      xs.push_back(track.x_eq_center[i]);
      ks.push_back(*kappa);
    }
  }
  if (xs.size() < 2)
    throw InvalidArgument("drift_ratio: need at least 2 windows with finite kappa");

  double x_mean = 0.0, k_mean = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    x_mean += xs[i];
    k_mean += ks[i];
  }
  x_mean /= static_cast<double>(xs.size());
  k_mean /= static_cast<double>(xs.size());
  double sxx = 0.0, sxk = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - x_mean;
    sxx += dx * dx;
    sxk += dx * (ks[i] - k_mean);
    scale += xs[i] * xs[i];
  }
  // No equilibrium drift to regress against.
  if (!(sxx > 1e-20 * (scale + 1.0))) return std::nullopt;
  const double slope = sxk / sxx;
  return DriftRatio{slope, 0.5 * slope};
}

PotentialColumn potential_from_density(const Density& density, double sigma2) {
  const std::size_t n = density.size();
  PotentialColumn col;
  col.u.assign(n, kNaN);
  col.parabola_dev.assign(n, kNaN);
  col.support = density.support_mask;
  if (!(sigma2 > 0)) {
    col.support.assign(n, 0);
    return col;
  }

  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < n; ++i) {
    if (density.support_mask[i] && density.p[i] > 0) {
      col.u[i] = -0.5 * sigma2 * std::log(density.p[i]);
      idx.push_back(i);
    }
  }
  if (idx.size() < 3) {
    col.support.assign(n, 0);
    col.u.assign(n, kNaN);
    return col;
  }

  Eigen::MatrixXd a(idx.size(), 3);
  Eigen::VectorXd y(idx.size());
  for (std::size_t r = 0; r < idx.size(); ++r) {
    const double x = density.grid[idx[r]];
    a(r, 0) = 1.0;
    a(r, 1) = x;
    a(r, 2) = x * x;
    y(r) = col.u[idx[r]];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  if (qr.rank() < 3) {
    col.support.assign(n, 0);
    col.u.assign(n, kNaN);
    return col;
  }
  const Eigen::VectorXd beta = qr.solve(y);
  for (std::size_t i : idx) {
    const double x = density.grid[i];
    col.parabola_dev[i] = col.u[i] - (beta(0) + beta(1) * x + beta(2) * x * x);
  }
  return col;
}

PotentialSurface potential_surface(const TimeSeries& ts, const TrackConfig& config) {
  ts.validate();
  if (!ts.uniform_dt)
    throw InvalidArgument("potential_surface: uniform spacing required");
  const double dt = *ts.uniform_dt;
  const std::size_t n = ts.size();
  const auto r = config.resolve(n, dt);
  const DetrendResult det = detrend(ts, r.detrend_bandwidth_time);

  // Shared evaluation grid across windows: the global residual range
  // padded by a pilot bandwidth.
  double rmin = det.residual[0], rmax = det.residual[0];
  for (double v : det.residual) {
    rmin = std::min(rmin, v);
    rmax = std::max(rmax, v);
  }
  double pilot = silverman_bandwidth(det.residual);
  if (!(pilot > 0)) pilot = 1e-3 * std::max(1.0, std::abs(rmax));

  KdeConfig kde_cfg = r.kde;
  kde_cfg.grid_lo = rmin - 3.0 * pilot;
  kde_cfg.grid_hi = rmax + 3.0 * pilot;

  PotentialSurface surf;
  surf.state_grid.resize(kde_cfg.n_grid);
  const double step =
      (*kde_cfg.grid_hi - *kde_cfg.grid_lo) / static_cast<double>(kde_cfg.n_grid - 1);
  for (int i = 0; i < kde_cfg.n_grid; ++i)
    surf.state_grid[i] = *kde_cfg.grid_lo + step * static_cast<double>(i);

  const std::size_t w = r.window_samples;
  const std::size_t ng = surf.state_grid.size();
  for (std::size_t s = 0; s + w <= n; s += r.step) {
    surf.time_centers.push_back(0.5 * (ts.times[s] + ts.times[s + w - 1]));
    const auto window = std::span<const double>(det.residual).subspan(s, w);

    PotentialColumn col;
    col.u.assign(ng, kNaN);
    col.parabola_dev.assign(ng, kNaN);
    col.support.assign(ng, 0);
    try {
      const Density density = estimate_density(window, kde_cfg);
      const AcfFit acf = fit_kappa_acf(window, dt);
      const Fp1Fit fp1 = fit_fp1(density);
      if (acf.kappa && fp1.kappa_u > 0) {
        const double sigma2 = estimate_sigma2(*acf.kappa, fp1.kappa_u);
        col = potential_from_density(density, sigma2);
      }
    } catch (const Error&) {
      // masked column
    }
    surf.u_emp.insert(surf.u_emp.end(), col.u.begin(), col.u.end());
    surf.parabola_dev.insert(surf.parabola_dev.end(), col.parabola_dev.begin(),
                             col.parabola_dev.end());
    surf.support_mask.insert(surf.support_mask.end(), col.support.begin(),
                             col.support.end());
  }
  return surf;
}

}  // namespace softwell::estimators
