#include "softwell/types.hpp"

#include <algorithm>
#include <cmath>

#include "softwell/errors.hpp"

namespace softwell {

void TimeSeries::validate() const {
  if (times.size() != values.size())
    throw InvalidArgument("time series: times and values differ in length");
  if (values.empty()) throw InvalidArgument("time series: empty");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]) || !std::isfinite(times[i]))
      throw InvalidArgument("time series: non-finite entry at index " +
                            std::to_string(i));
    if (i > 0 && !(times[i] > times[i - 1]))
      throw InvalidArgument("time series: timestamps not strictly increasing at index " +
                            std::to_string(i));
  }
  if (uniform_dt) {
    const double dt = *uniform_dt;
    if (!(dt > 0)) throw InvalidArgument("time series: uniform_dt must be positive");
    for (std::size_t i = 1; i < times.size(); ++i) {
      if (std::abs(times[i] - times[i - 1] - dt) > 1e-9 * dt)
        throw InvalidArgument("time series: spacing deviates from uniform_dt at index " +
                              std::to_string(i));
    }
  }
  if (censored && censored_index >= values.size())
    throw InvalidArgument("time series: censored index out of range");
}

std::size_t Density::supported_count() const {
  return static_cast<std::size_t>(
      std::count(support_mask.begin(), support_mask.end(), std::uint8_t{1}));
}

double Density::max_p() const {
  double m = 0.0;
  for (double v : p) m = std::max(m, v);
  return m;
}

double Density::integrate_against(const std::vector<double>& f) const {
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double h = grid[i + 1] - grid[i];
    acc += 0.5 * h * (f[i] * p[i] + f[i + 1] * p[i + 1]);
  }
  return acc;
}

void Density::moments(double& mean, double& variance, double& skewness) const {
  std::vector<double> ones(grid.size(), 1.0);
  const double mass = integrate_against(ones);
  std::vector<double> f(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) f[i] = grid[i];
  mean = integrate_against(f) / mass;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double d = grid[i] - mean;
    f[i] = d * d;
  }
  variance = integrate_against(f) / mass;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double d = grid[i] - mean;
    f[i] = d * d * d;
  }
  const double m3 = integrate_against(f) / mass;
  skewness = variance > 0 ? m3 / std::pow(variance, 1.5) : 0.0;
}

void Density::validate() const {
  if (grid.size() != p.size() || grid.size() != dp.size() ||
      grid.size() != support_mask.size())
    throw InvalidArgument("density: field lengths differ");
  if (grid.size() < 3) throw InvalidArgument("density: too few grid points");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw InvalidArgument("density: grid not ascending");
  double mass = 0.0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (p[i] < 0 || !std::isfinite(p[i]))
      throw InvalidArgument("density: negative or non-finite value");
    mass += 0.5 * (grid[i + 1] - grid[i]) * (p[i] + p[i + 1]);
  }
  if (std::abs(mass - 1.0) > 1e-3)
    throw InvalidArgument("density: mass deviates from 1 by more than 1e-3");
}

}  // namespace softwell
