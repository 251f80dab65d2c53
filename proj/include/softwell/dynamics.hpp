#pragma once

#include <cstdint>
#include <optional>

#include "softwell/types.hpp"

namespace softwell::dynamics {

/// Parameters of the noisy saddle-node normal form
///   dx = (mu - x^2) dt + sigma dW,   dmu = -epsilon dt.
struct SnfParams {
  double mu0 = 1.0;       ///< initial control parameter
  double epsilon = 0.0;   ///< drift rate of mu per unit time, >= 0
  double sigma = 1.0;     ///< noise amplitude, >= 0
  double dt = 0.1;        ///< integration and sampling step, > 0
  std::size_t n_max = 2000;  ///< maximum sample count, >= 1
  double x0 = 1.0;        ///< initial state
  /// State value at or below which the realization is censored. The
  /// crossing sample is kept and flagged, not deleted.
  double escape_level = -1.0;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Euler-Maruyama integration of the saddle-node normal form. Sampling
/// every dt; stops at n_max samples or at the first sample at or below
/// escape_level (censored flag set, the offending sample included).
/// Identical seed gives bitwise-identical output. A non-finite state
/// (overflow after escape) ends the series at the last finite sample
/// with the censored flag set.
TimeSeries simulate_snf(const SnfParams& params);

/// Linear (Ornstein-Uhlenbeck) reference process
///   dx = -kappa x dt + sigma dW,  x(0) = 0,
/// sampled every dt using the exact transition density, so the lag-1
/// autocorrelation is exp(-kappa dt) and the stationary variance is
/// sigma^2 / (2 kappa) without discretization bias. kappa must be > 0.
TimeSeries simulate_linear(double kappa, double sigma, double dt,
                           std::size_t n, std::uint64_t seed);

/// Parameters for the censored/conditional ensemble of Appendix-style
/// runs at fixed mu (epsilon = 0).
struct EnsembleParams {
  std::size_t n_realizations = 100000;
  double mu = 1.0;        ///< fixed control parameter, > 0
  double sigma = 1.0;
  /// Escape boundary offset beyond the unstable equilibrium, >= 0;
  /// a realization at or below -sqrt(mu) - b counts as escaped.
  double b = 1.0;
  double dt = 0.01;
  std::size_t burn_in = 2000;  ///< steps discarded before pooling
  std::size_t horizon = 4000;  ///< total steps
  std::uint64_t seed = 0;
  std::size_t n_bins = 201;    ///< histogram resolution of the pooled density

  void validate() const;
};

/// Conditional (non-escaped) stationary statistics from a replaced
/// ensemble.
struct EnsembleResult {
  Density density;        ///< histogram density of pooled post-burn-in states
  double skewness = 0.0;  ///< third standardized moment of the pooled samples
  double mean = 0.0;
  double variance = 0.0;
  std::size_t pooled_count = 0;
  std::size_t escaped_total = 0;  ///< replacements performed over the run
};

/// Evolves n realizations of dx = (mu - x^2) dt + sigma dW; at each step
/// realizations at or below -sqrt(mu) - b are replaced by copies of
/// uniformly chosen survivors. After burn_in, states are pooled into an
/// empirical density; skewness and moments come from the pooled samples.
/// All randomness is drawn from one seeded stream interleaved
/// deterministically, so a seed fixes the result exactly.
/// Throws ComputeError if the whole ensemble escapes within one step.
EnsembleResult conditional_ensemble(const EnsembleParams& params);

/// Grid controls for the stationary Fokker-Planck quadrature.
struct FpGridSpec {
  int n_points = 2001;  ///< base resolution, refined until the residual passes
  std::optional<double> lo, hi;  ///< explicit span; default is
                                 ///< [-sqrt(mu)-5 sigma^(2/3), sqrt(mu)+5 sigma^(2/3)]
  double boundary_floor = 1e-8;  ///< boundary density threshold, relative to max p
  double residual_tol = 1e-6;    ///< ODE residual target, relative
  int max_points = (1 << 21) + 1;
};

/// Exact stationary density of the re-injected saddle-node process with
/// its escape rate and moments. Solves
///   (sigma^2/2) p' = (mu - x^2) p - c
/// with p -> 0 at both ends and constant flux c (c <= 0: flow toward
/// -infinity); c is fixed by normalization.
struct FpSolution {
  double mu = 0.0;
  double sigma = 0.0;
  std::vector<double> grid;
  std::vector<double> p;
  double c = 0.0;         ///< escape/flow rate, <= 0 for finite sigma
  double mean = 0.0;
  double variance = 0.0;
  double skewness = 0.0;
  double ode_residual = 0.0;  ///< achieved residual, relative to max |(mu-x^2) p|
};

/// Quadrature solution of the stationary Fokker-Planck equation, used as
/// the calibration oracle. The integrand is handled in log space, so small
/// sigma does not overflow. The grid is refined until the central-difference
/// ODE residual is below residual_tol and extended while the boundary
/// density is still dominated by the decay of the well; once the boundary
/// value is carried by the escape flux itself, extension stops. Explicitly
/// requested grids that truncate the well raise ComputeError.
FpSolution stationary_fp_solve(double mu, double sigma,
                               const FpGridSpec& spec = {});

}  // namespace softwell::dynamics
