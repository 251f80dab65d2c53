#pragma once

#include <optional>
#include <span>

#include "softwell/types.hpp"

namespace softwell::estimators {

/// Lag-1 autocorrelation fit of a detrended window.
struct AcfFit {
  double alpha = 0.0;  ///< least-squares slope of x(k+1) on x(k), no intercept
  /// -ln(alpha)/dt. Empty when alpha <= 0 or alpha >= 1: the linear decay
  /// rate is out of the model's domain there, it is not clamped.
  std::optional<double> kappa;
};

/// AR(1) propagator and decay rate from a uniformly spaced window.
/// Throws ComputeError on a zero-variance window.
AcfFit fit_kappa_acf(std::span<const double> residual_window, double dt);

/// Linear stationary Fokker-Planck fit: least squares of
///   (1/2) dp = -kappa_u * x * p + c_emp
/// over supported grid points, unweighted.
struct Fp1Fit {
  double kappa_u = 0.0;  ///< density-based decay rate (estimates kappa/sigma^2)
  double c_emp = 0.0;    ///< flux constant; signed deviation-from-linearity proxy
};

/// Quadratic stationary Fokker-Planck fit: least squares of
///   (1/2) dp = (-kappa_u * x + n2 * x^2) p + c_emp2.
struct Fp2Fit {
  double kappa_u = 0.0;
  double n2 = 0.0;       ///< quadratic coefficient; -1 for the unit-noise normal form
  double c_emp2 = 0.0;
};

/// Throws ComputeError when fewer than 10 supported points remain or the
/// design matrix is rank deficient (all x*p vanish).
Fp1Fit fit_fp1(const Density& density);
Fp2Fit fit_fp2(const Density& density);

/// Third standardized moment of the gridded density by trapezoid
/// integration. Throws ComputeError on zero variance.
double skewness(const Density& density);

/// Companion sample-based estimator for cross-checks.
double skewness_samples(std::span<const double> samples);

/// Noise-variance estimate kappa_acf / kappa_u. Preferable to the AR(1)
/// regression residual, which systematically underestimates the noise
/// level. Throws ComputeError when kappa_u <= 0.
double estimate_sigma2(double kappa_acf, double kappa_u);

}  // namespace softwell::estimators
