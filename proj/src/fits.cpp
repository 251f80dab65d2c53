#include "softwell/fits.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "softwell/errors.hpp"

namespace softwell::estimators {

AcfFit fit_kappa_acf(std::span<const double> residual_window, double dt) {
  const std::size_t n = residual_window.size();
  if (n < 3) throw InvalidArgument("fit_kappa_acf: need at least 3 samples");
  if (!(dt > 0)) throw InvalidArgument("fit_kappa_acf: dt must be > 0");

  // Least-squares slope of x(k+1) on x(k) without intercept; the window
  // is already detrended.
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    sxx += residual_window[k] * residual_window[k];
    sxy += residual_window[k] * residual_window[k + 1];
  }
  if (sxx == 0.0) throw ComputeError("fit_kappa_acf: zero-variance window");

  AcfFit fit;
  fit.alpha = sxy / sxx;
  // alpha outside (0, 1) has no decay-rate reading; flag it instead of
  // clamping.
  if (fit.alpha > 0.0 && fit.alpha < 1.0)
    fit.kappa = -std::log(fit.alpha) / dt;
  return fit;
}

namespace {

std::vector<std::size_t> supported_indices(const Density& d) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d.support_mask[i]) idx.push_back(i);
  return idx;
}

Eigen::VectorXd solve_least_squares(const Eigen::MatrixXd& a,
                                    const Eigen::VectorXd& y,
                                    const char* what) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  if (qr.rank() < a.cols())
    throw ComputeError(std::string(what) + ": rank-deficient design matrix");
  return qr.solve(y);
}

}  // namespace

Fp1Fit fit_fp1(const Density& density) {
  const auto idx = supported_indices(density);
  if (idx.size() < 10)
    throw ComputeError("fit_fp1: fewer than 10 supported grid points");

  Eigen::MatrixXd a(idx.size(), 2);
  Eigen::VectorXd y(idx.size());
  for (std::size_t r = 0; r < idx.size(); ++r) {
    const std::size_t i = idx[r];
    a(r, 0) = -density.grid[i] * density.p[i];
    a(r, 1) = 1.0;
    y(r) = 0.5 * density.dp[i];
  }
  const Eigen::VectorXd beta = solve_least_squares(a, y, "fit_fp1");
  return Fp1Fit{beta(0), beta(1)};
}

Fp2Fit fit_fp2(const Density& density) {
  const auto idx = supported_indices(density);
  if (idx.size() < 10)
    throw ComputeError("fit_fp2: fewer than 10 supported grid points");

  Eigen::MatrixXd a(idx.size(), 3);
  Eigen::VectorXd y(idx.size());
  for (std::size_t r = 0; r < idx.size(); ++r) {
    const std::size_t i = idx[r];
    const double x = density.grid[i];
    const double p = density.p[i];
    a(r, 0) = -x * p;
    a(r, 1) = x * x * p;
    a(r, 2) = 1.0;
    y(r) = 0.5 * density.dp[i];
  }
  const Eigen::VectorXd beta = solve_least_squares(a, y, "fit_fp2");
  return Fp2Fit{beta(0), beta(1), beta(2)};
}

double skewness(const Density& density) {
  double mean = 0.0, variance = 0.0, skew = 0.0;
  density.moments(mean, variance, skew);
  if (!(variance > 0)) throw ComputeError("skewness: zero-variance density");
  return skew;
}

double skewness_samples(std::span<const double> samples) {
  const std::size_t n = samples.size();
  if (n < 3) throw InvalidArgument("skewness_samples: need at least 3 samples");
  double mean = 0.0;
  for (double v : samples) mean += v;
  mean /= static_cast<double>(n);
  double m2 = 0.0, m3 = 0.0;
  for (double v : samples) {
    const double d = v - mean;
    m2 += d * d;
    m3 += d * d * d;
  }
  m2 /= static_cast<double>(n);
  m3 /= static_cast<double>(n);
  if (!(m2 > 0)) throw ComputeError("skewness_samples: zero variance");
  return m3 / std::pow(m2, 1.5);
}

double estimate_sigma2(double kappa_acf, double kappa_u) {
  if (!(kappa_u > 0))
    throw ComputeError("estimate_sigma2: kappa_u must be positive");
  return kappa_acf / kappa_u;
}

}  // namespace softwell::estimators
