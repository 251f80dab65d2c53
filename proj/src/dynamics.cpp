#include "softwell/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "softwell/errors.hpp"

namespace softwell::dynamics {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double logaddexp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

// Streaming mean/M2/M3 accumulator (Welford update extended to the third
// central moment).
struct MomentAccumulator {
  std::size_t n = 0;
  double mean = 0.0, m2 = 0.0, m3 = 0.0;

  void add(double x) {
    const double n1 = static_cast<double>(n);
    ++n;
    const double delta = x - mean;
    const double delta_n = delta / static_cast<double>(n);
    const double term1 = delta * delta_n * n1;
    mean += delta_n;
    m3 += term1 * delta_n * (static_cast<double>(n) - 2.0) - 3.0 * delta_n * m2;
    m2 += term1;
  }
  double variance() const { return n ? m2 / static_cast<double>(n) : 0.0; }
  double skewness() const {
    if (n == 0 || m2 <= 0.0) return 0.0;
    const double v = m2 / static_cast<double>(n);
    return (m3 / static_cast<double>(n)) / std::pow(v, 1.5);
  }
};

}  // namespace

void SnfParams::validate() const {
  if (!(dt > 0)) throw InvalidArgument("simulate_snf: dt must be > 0");
  if (n_max < 1) throw InvalidArgument("simulate_snf: n_max must be >= 1");
  if (!(sigma >= 0)) throw InvalidArgument("simulate_snf: sigma must be >= 0");
  if (!(epsilon >= 0)) throw InvalidArgument("simulate_snf: epsilon must be >= 0");
  if (!std::isfinite(mu0) || !std::isfinite(x0))
    throw InvalidArgument("simulate_snf: mu0 and x0 must be finite");
}

TimeSeries simulate_snf(const SnfParams& params) {
  params.validate();
  TimeSeries ts;
  ts.times.reserve(params.n_max);
  ts.values.reserve(params.n_max);
  ts.uniform_dt = params.dt;

  std::mt19937_64 rng(params.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double noise_scale = params.sigma * std::sqrt(params.dt);

  double x = params.x0;
  double mu = params.mu0;
  for (std::size_t k = 0; k < params.n_max; ++k) {
    if (k > 0) {
      const double x_new =
          x + (mu - x * x) * params.dt + noise_scale * normal(rng);
      mu -= params.epsilon * params.dt;
      if (!std::isfinite(x_new)) {
        // Overflow after escape: censor at the last finite sample instead
        // of propagating non-finite values.
        ts.censored = true;
        ts.censored_index = ts.values.size() - 1;
        return ts;
      }
      x = x_new;
    }
    ts.times.push_back(static_cast<double>(k) * params.dt);
    ts.values.push_back(x);
    if (x <= params.escape_level) {
      ts.censored = true;
      ts.censored_index = k;
      return ts;
    }
  }
  return ts;
}

TimeSeries simulate_linear(double kappa, double sigma, double dt,
                           std::size_t n, std::uint64_t seed) {
  if (!(kappa > 0)) throw InvalidArgument("simulate_linear: kappa must be > 0");
  if (!(dt > 0)) throw InvalidArgument("simulate_linear: dt must be > 0");
  if (!(sigma >= 0)) throw InvalidArgument("simulate_linear: sigma must be >= 0");
  if (n < 1) throw InvalidArgument("simulate_linear: n must be >= 1");

  // Exact transition of the Ornstein-Uhlenbeck process: the lag-1
  // autocorrelation is exp(-kappa dt) and the stationary variance is
  // sigma^2/(2 kappa) with no step-size bias.
  const double alpha = std::exp(-kappa * dt);
  const double cond_sd = sigma * std::sqrt((1.0 - alpha * alpha) / (2.0 * kappa));

  TimeSeries ts;
  ts.times.reserve(n);
  ts.values.reserve(n);
  ts.uniform_dt = dt;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  double x = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k > 0) x = alpha * x + cond_sd * normal(rng);
    ts.times.push_back(static_cast<double>(k) * dt);
    ts.values.push_back(x);
  }
  return ts;
}

void EnsembleParams::validate() const {
  if (n_realizations < 1)
    throw InvalidArgument("conditional_ensemble: need at least one realization");
  if (!(mu > 0)) throw InvalidArgument("conditional_ensemble: mu must be > 0");
  if (!(b >= 0)) throw InvalidArgument("conditional_ensemble: b must be >= 0");
  if (!(sigma >= 0)) throw InvalidArgument("conditional_ensemble: sigma must be >= 0");
  if (!(dt > 0)) throw InvalidArgument("conditional_ensemble: dt must be > 0");
  if (horizon <= burn_in)
    throw InvalidArgument("conditional_ensemble: horizon must exceed burn_in");
  if (n_bins < 10) throw InvalidArgument("conditional_ensemble: n_bins too small");
}

EnsembleResult conditional_ensemble(const EnsembleParams& params) {
  params.validate();
  const double sqrt_mu = std::sqrt(params.mu);
  const double boundary = -sqrt_mu - params.b;
  const double top =
      sqrt_mu + 6.0 * std::max(std::pow(params.sigma, 2.0 / 3.0), params.sigma) +
      0.5;
  const std::size_t n = params.n_realizations;

  std::mt19937_64 rng(params.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double noise_scale = params.sigma * std::sqrt(params.dt);

  std::vector<double> x(n, sqrt_mu);
  std::vector<std::size_t> escaped;
  std::vector<std::size_t> survivors;

  const std::size_t n_bins = params.n_bins;
  const double bin_width = (top - boundary) / static_cast<double>(n_bins);
  std::vector<std::uint64_t> counts(n_bins, 0);
  MomentAccumulator acc;
  std::size_t escaped_total = 0;

  for (std::size_t k = 1; k <= params.horizon; ++k) {
    escaped.clear();
    for (std::size_t i = 0; i < n; ++i) {
      const double xi = x[i];
      const double xn = xi + (params.mu - xi * xi) * params.dt +
                        noise_scale * normal(rng);
      x[i] = xn;
      if (!(xn > boundary)) escaped.push_back(i);  // catches NaN too
    }
    if (!escaped.empty()) {
      if (escaped.size() == n)
        throw ComputeError("conditional ensemble went extinct in one step at mu=" +
                           std::to_string(params.mu) +
                           ", b=" + std::to_string(params.b));
      survivors.clear();
      std::size_t e = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (e < escaped.size() && escaped[e] == i) {
          ++e;
        } else {
          survivors.push_back(i);
        }
      }
      std::uniform_int_distribution<std::size_t> pick(0, survivors.size() - 1);
      for (std::size_t idx : escaped) x[idx] = x[survivors[pick(rng)]];
      escaped_total += escaped.size();
    }
    if (k > params.burn_in) {
      for (std::size_t i = 0; i < n; ++i) {
        const double v = x[i];
        acc.add(v);
        auto bin = static_cast<std::ptrdiff_t>((v - boundary) / bin_width);
        bin = std::clamp<std::ptrdiff_t>(bin, 0,
                                         static_cast<std::ptrdiff_t>(n_bins) - 1);
        ++counts[static_cast<std::size_t>(bin)];
      }
    }
  }

  EnsembleResult result;
  result.pooled_count = acc.n;
  result.escaped_total = escaped_total;
  result.mean = acc.mean;
  result.variance = acc.variance();
  result.skewness = acc.skewness();

  Density& d = result.density;
  d.grid.resize(n_bins);
  d.p.resize(n_bins);
  d.dp.resize(n_bins);
  d.support_mask.assign(n_bins, 0);
  const double norm = 1.0 / (static_cast<double>(acc.n) * bin_width);
  for (std::size_t i = 0; i < n_bins; ++i) {
    d.grid[i] = boundary + (static_cast<double>(i) + 0.5) * bin_width;
    d.p[i] = static_cast<double>(counts[i]) * norm;
  }
  for (std::size_t i = 0; i < n_bins; ++i) {
    if (i == 0) {
      d.dp[i] = (d.p[1] - d.p[0]) / bin_width;
    } else if (i + 1 == n_bins) {
      d.dp[i] = (d.p[i] - d.p[i - 1]) / bin_width;
    } else {
      d.dp[i] = (d.p[i + 1] - d.p[i - 1]) / (2.0 * bin_width);
    }
  }
  const double floor = 1e-3 * d.max_p();
  for (std::size_t i = 0; i < n_bins; ++i) d.support_mask[i] = d.p[i] >= floor;
  d.bandwidth = bin_width;
  d.n_samples = acc.n;
  d.bandwidth_method = BandwidthMethod::histogram;
  return result;
}

namespace {

struct FpGridSolution {
  std::vector<double> grid, p;
  double c = 0.0;
  double residual = 0.0;     // relative ODE residual, central differences
  double p_max = 0.0;
  double g_margin = 0.0;     // g(lo) - min g: quality of the left truncation
};

// One quadrature pass on a fixed uniform grid. Everything that can
// overflow is kept in log space; the density is exponentiated only after
// normalization.
FpGridSolution fp_solve_on_grid(double mu, double sigma, double lo, double hi,
                                int n) {
  FpGridSolution out;
  const double h = (hi - lo) / static_cast<double>(n - 1);
  const double two_over_s2 = 2.0 / (sigma * sigma);

  std::vector<double> x(n), g(n);
  for (int i = 0; i < n; ++i) {
    x[i] = lo + h * static_cast<double>(i);
    g[i] = two_over_s2 * (mu * x[i] - x[i] * x[i] * x[i] / 3.0);
  }
  const double g_min = *std::min_element(g.begin(), g.end());
  out.g_margin = g.front() - g_min;

  // Inner integral I(x) = int_lo^x exp(-g), cumulative trapezoid in log
  // space; the lower tail below lo is negligible when g(lo) >> min g.
  const double log_h2 = std::log(0.5 * h);
  std::vector<double> log_q(n);
  double log_I = kNegInf;
  log_q[0] = kNegInf;
  for (int i = 1; i < n; ++i) {
    const double log_seg = log_h2 + logaddexp(-g[i - 1], -g[i]);
    log_I = logaddexp(log_I, log_seg);
    log_q[i] = g[i] + log_I;
  }

  double log_z = kNegInf;
  for (int i = 0; i + 1 < n; ++i)
    log_z = logaddexp(log_z, log_h2 + logaddexp(log_q[i], log_q[i + 1]));

  out.grid = std::move(x);
  out.p.resize(n);
  for (int i = 0; i < n; ++i) {
    out.p[i] = std::exp(log_q[i] - log_z);
    out.p_max = std::max(out.p_max, out.p[i]);
  }
  // (sigma^2/2) p' = (mu - x^2) p - c with c fixed by normalization.
  out.c = -0.5 * sigma * sigma * std::exp(-log_z);

  double max_resid = 0.0, scale = 0.0;
  for (int i = 0; i < n; ++i) {
    const double drift = (mu - out.grid[i] * out.grid[i]) * out.p[i];
    scale = std::max(scale, std::abs(drift));
    if (i == 0 || i + 1 == n) continue;
    const double dp = (out.p[i + 1] - out.p[i - 1]) / (2.0 * h);
    max_resid = std::max(max_resid,
                         std::abs(0.5 * sigma * sigma * dp - drift + out.c));
  }
  out.residual = scale > 0 ? max_resid / scale : 0.0;
  return out;
}

}  // namespace

FpSolution stationary_fp_solve(double mu, double sigma, const FpGridSpec& spec) {
  if (!(sigma > 0))
    throw InvalidArgument("stationary_fp_solve: sigma must be > 0");
  if (!std::isfinite(mu))
    throw InvalidArgument("stationary_fp_solve: mu must be finite");
  if (spec.n_points < 32)
    throw InvalidArgument("stationary_fp_solve: n_points too small");

  const double sqrt_mu = mu > 0 ? std::sqrt(mu) : 0.0;
  const double pad = 5.0 * std::pow(sigma, 2.0 / 3.0);
  const double lo_min = -sqrt_mu - pad;
  const double hi_min = sqrt_mu + pad;
  const bool explicit_grid = spec.lo.has_value() || spec.hi.has_value();
  double lo = spec.lo.value_or(lo_min);
  double hi = spec.hi.value_or(hi_min);
  if (explicit_grid && (lo > lo_min + 1e-12 || hi < hi_min - 1e-12))
    throw ComputeError(
        "stationary_fp_solve: grid too narrow; span must cover "
        "[-sqrt(mu)-5 sigma^(2/3), sqrt(mu)+5 sigma^(2/3)]");
  if (!(hi > lo)) throw InvalidArgument("stationary_fp_solve: empty grid span");

  int n = spec.n_points | 1;  // odd keeps halving exact
  const double span0 = hi - lo;
  FpGridSolution sol;
  for (int extension = 0;; ++extension) {
    sol = fp_solve_on_grid(mu, sigma, lo, hi, n);
    while (sol.residual > spec.residual_tol && 2 * (n - 1) + 1 <= spec.max_points) {
      n = 2 * (n - 1) + 1;
      sol = fp_solve_on_grid(mu, sigma, lo, hi, n);
    }

    // e^{-37} ~ 1e-16: contributions from below lo are lost in rounding.
    const bool left_ok = sol.g_margin >= 37.0;
    const double edge = sol.p.back();
    const double flux_tail =
        hi * hi > mu ? std::abs(sol.c) / (hi * hi - mu)
                     : std::numeric_limits<double>::infinity();
    const bool right_ok = edge <= spec.boundary_floor * sol.p_max ||
                          (std::isfinite(flux_tail) && edge <= 2.0 * flux_tail);
    if (left_ok && right_ok) break;
    if (explicit_grid || extension >= 40)
      throw ComputeError("stationary_fp_solve: grid too narrow (boundary density above " +
                         std::to_string(spec.boundary_floor) + " of max p)");
    // Grow the span at the same resolution.
    const double step = 0.25 * span0;
    const double h = (hi - lo) / static_cast<double>(n - 1);
    if (!left_ok) lo -= step;
    if (!right_ok) hi += step;
    n = static_cast<int>(std::ceil((hi - lo) / h)) | 1;
    n = std::min(n, spec.max_points);
  }

  FpSolution result;
  result.mu = mu;
  result.sigma = sigma;
  result.grid = std::move(sol.grid);
  result.p = std::move(sol.p);
  result.c = sol.c;
  result.ode_residual = sol.residual;

  // Trapezoid moments over the returned grid.
  const std::size_t m = result.grid.size();
  auto trap = [&](auto&& f) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < m; ++i) {
      const double hh = result.grid[i + 1] - result.grid[i];
      acc += 0.5 * hh * (f(i) * result.p[i] + f(i + 1) * result.p[i + 1]);
    }
    return acc;
  };
  const double mass = trap([](std::size_t) { return 1.0; });
  const double mean = trap([&](std::size_t i) { return result.grid[i]; }) / mass;
  const double var =
      trap([&](std::size_t i) { return (result.grid[i] - mean) * (result.grid[i] - mean); }) /
      mass;
  const double m3 = trap([&](std::size_t i) {
                      const double d = result.grid[i] - mean;
                      return d * d * d;
                    }) /
                    mass;
  result.mean = mean;
  result.variance = var;
  result.skewness = var > 0 ? m3 / std::pow(var, 1.5) : 0.0;
  return result;
}

}  // namespace softwell::dynamics
