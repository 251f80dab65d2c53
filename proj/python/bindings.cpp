#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "softwell/dynamics.hpp"
#include "softwell/errors.hpp"
#include "softwell/fits.hpp"
#include "softwell/ingest.hpp"
#include "softwell/kde.hpp"
#include "softwell/significance.hpp"
#include "softwell/track.hpp"

namespace py = pybind11;
using namespace softwell;

PYBIND11_MODULE(_softwell, m) {
  m.doc() = "Nonlinear softening indicators for noisy time series";

  py::register_exception<Error>(m, "SoftwellError", PyExc_RuntimeError);

  py::class_<TimeSeries>(m, "TimeSeries")
      .def(py::init<>())
      .def_readwrite("times", &TimeSeries::times)
      .def_readwrite("values", &TimeSeries::values)
      .def_readwrite("uniform_dt", &TimeSeries::uniform_dt)
      .def_readwrite("censored", &TimeSeries::censored)
      .def_readwrite("censored_index", &TimeSeries::censored_index)
      .def("__len__", &TimeSeries::size)
      .def("validate", &TimeSeries::validate);

  py::class_<Density>(m, "Density")
      .def_readonly("grid", &Density::grid)
      .def_readonly("p", &Density::p)
      .def_readonly("dp", &Density::dp)
      .def_readonly("bandwidth", &Density::bandwidth)
      .def_readonly("n_samples", &Density::n_samples)
      .def_readonly("support_mask", &Density::support_mask)
      .def_property_readonly("bandwidth_method", [](const Density& d) {
        switch (d.bandwidth_method) {
          case BandwidthMethod::isj: return "isj";
          case BandwidthMethod::silverman: return "silverman";
          case BandwidthMethod::fixed: return "fixed";
          case BandwidthMethod::histogram: return "histogram";
          case BandwidthMethod::degenerate: return "degenerate";
        }
        return "fixed";
      });

  py::class_<dynamics::SnfParams>(m, "SnfParams")
      .def(py::init<>())
      .def_readwrite("mu0", &dynamics::SnfParams::mu0)
      .def_readwrite("epsilon", &dynamics::SnfParams::epsilon)
      .def_readwrite("sigma", &dynamics::SnfParams::sigma)
      .def_readwrite("dt", &dynamics::SnfParams::dt)
      .def_readwrite("n_max", &dynamics::SnfParams::n_max)
      .def_readwrite("x0", &dynamics::SnfParams::x0)
      .def_readwrite("escape_level", &dynamics::SnfParams::escape_level)
      .def_readwrite("seed", &dynamics::SnfParams::seed);

  py::class_<dynamics::EnsembleParams>(m, "EnsembleParams")
      .def(py::init<>())
      .def_readwrite("n_realizations", &dynamics::EnsembleParams::n_realizations)
      .def_readwrite("mu", &dynamics::EnsembleParams::mu)
      .def_readwrite("sigma", &dynamics::EnsembleParams::sigma)
      .def_readwrite("b", &dynamics::EnsembleParams::b)
      .def_readwrite("dt", &dynamics::EnsembleParams::dt)
      .def_readwrite("burn_in", &dynamics::EnsembleParams::burn_in)
      .def_readwrite("horizon", &dynamics::EnsembleParams::horizon)
      .def_readwrite("seed", &dynamics::EnsembleParams::seed)
      .def_readwrite("n_bins", &dynamics::EnsembleParams::n_bins);

  py::class_<dynamics::EnsembleResult>(m, "EnsembleResult")
      .def_readonly("density", &dynamics::EnsembleResult::density)
      .def_readonly("skewness", &dynamics::EnsembleResult::skewness)
      .def_readonly("mean", &dynamics::EnsembleResult::mean)
      .def_readonly("variance", &dynamics::EnsembleResult::variance)
      .def_readonly("pooled_count", &dynamics::EnsembleResult::pooled_count)
      .def_readonly("escaped_total", &dynamics::EnsembleResult::escaped_total);

  py::class_<dynamics::FpGridSpec>(m, "FpGridSpec")
      .def(py::init<>())
      .def_readwrite("n_points", &dynamics::FpGridSpec::n_points)
      .def_readwrite("lo", &dynamics::FpGridSpec::lo)
      .def_readwrite("hi", &dynamics::FpGridSpec::hi)
      .def_readwrite("boundary_floor", &dynamics::FpGridSpec::boundary_floor)
      .def_readwrite("residual_tol", &dynamics::FpGridSpec::residual_tol);

  py::class_<dynamics::FpSolution>(m, "FpSolution")
      .def_readonly("mu", &dynamics::FpSolution::mu)
      .def_readonly("sigma", &dynamics::FpSolution::sigma)
      .def_readonly("grid", &dynamics::FpSolution::grid)
      .def_readonly("p", &dynamics::FpSolution::p)
      .def_readonly("c", &dynamics::FpSolution::c)
      .def_readonly("mean", &dynamics::FpSolution::mean)
      .def_readonly("variance", &dynamics::FpSolution::variance)
      .def_readonly("skewness", &dynamics::FpSolution::skewness)
      .def_readonly("ode_residual", &dynamics::FpSolution::ode_residual);

  m.def("simulate_snf", &dynamics::simulate_snf, py::arg("params"),
        "Euler-Maruyama realization of the noisy saddle-node normal form");
  m.def("simulate_linear", &dynamics::simulate_linear, py::arg("kappa"),
        py::arg("sigma"), py::arg("dt"), py::arg("n"), py::arg("seed") = 0,
        "Exactly sampled Ornstein-Uhlenbeck reference series");
  m.def("conditional_ensemble", &dynamics::conditional_ensemble,
        py::arg("params"),
        "Stationary statistics of the non-escaped ensemble");
  m.def("stationary_fp_solve", &dynamics::stationary_fp_solve, py::arg("mu"),
        py::arg("sigma"), py::arg("spec") = dynamics::FpGridSpec{},
        "Stationary Fokker-Planck density, escape rate and moments");

  py::class_<estimators::DetrendResult>(m, "DetrendResult")
      .def_readonly("trend", &estimators::DetrendResult::trend)
      .def_readonly("residual", &estimators::DetrendResult::residual)
      .def_readonly("bandwidth", &estimators::DetrendResult::bandwidth);

  m.def("detrend", &estimators::detrend, py::arg("ts"), py::arg("bandwidth"),
        "Gaussian-kernel equilibrium estimate and residual");

  py::class_<estimators::KdeConfig>(m, "KdeConfig")
      .def(py::init<>())
      .def_readwrite("n_grid", &estimators::KdeConfig::n_grid)
      .def_readwrite("bandwidth", &estimators::KdeConfig::bandwidth)
      .def_readwrite("support_floor", &estimators::KdeConfig::support_floor)
      .def_readwrite("selector_bins", &estimators::KdeConfig::selector_bins)
      .def_readwrite("grid_lo", &estimators::KdeConfig::grid_lo)
      .def_readwrite("grid_hi", &estimators::KdeConfig::grid_hi);

  m.def(
      "estimate_density",
      [](const std::vector<double>& samples, const estimators::KdeConfig& cfg) {
        return estimators::estimate_density(samples, cfg);
      },
      py::arg("samples"), py::arg("config") = estimators::KdeConfig{},
      "Kernel density estimate with data-driven bandwidth");

  py::class_<estimators::AcfFit>(m, "AcfFit")
      .def_readonly("alpha", &estimators::AcfFit::alpha)
      .def_readonly("kappa", &estimators::AcfFit::kappa);
  py::class_<estimators::Fp1Fit>(m, "Fp1Fit")
      .def_readonly("kappa_u", &estimators::Fp1Fit::kappa_u)
      .def_readonly("c_emp", &estimators::Fp1Fit::c_emp);
  py::class_<estimators::Fp2Fit>(m, "Fp2Fit")
      .def_readonly("kappa_u", &estimators::Fp2Fit::kappa_u)
      .def_readonly("n2", &estimators::Fp2Fit::n2)
      .def_readonly("c_emp2", &estimators::Fp2Fit::c_emp2);

  m.def(
      "fit_kappa_acf",
      [](const std::vector<double>& window, double dt) {
        return estimators::fit_kappa_acf(window, dt);
      },
      py::arg("residual_window"), py::arg("dt"));
  m.def("fit_fp1", &estimators::fit_fp1, py::arg("density"));
  m.def("fit_fp2", &estimators::fit_fp2, py::arg("density"));
  m.def("skewness", &estimators::skewness, py::arg("density"));
  m.def(
      "skewness_samples",
      [](const std::vector<double>& samples) {
        return estimators::skewness_samples(samples);
      },
      py::arg("samples"));
  m.def("estimate_sigma2", &estimators::estimate_sigma2, py::arg("kappa_acf"),
        py::arg("kappa_u"));

  py::class_<estimators::TrackConfig>(m, "TrackConfig")
      .def(py::init<>())
      .def_readwrite("window", &estimators::TrackConfig::window)
      .def_readwrite("step", &estimators::TrackConfig::step)
      .def_readwrite("detrend_bandwidth",
                     &estimators::TrackConfig::detrend_bandwidth)
      .def_readwrite("kde", &estimators::TrackConfig::kde)
      .def_readwrite("min_window", &estimators::TrackConfig::min_window);

  py::class_<estimators::WindowIndicators>(m, "WindowIndicators")
      .def_readonly("t_center", &estimators::WindowIndicators::t_center)
      .def_readonly("kappa_acf", &estimators::WindowIndicators::kappa_acf)
      .def_readonly("kappa_u", &estimators::WindowIndicators::kappa_u)
      .def_readonly("c_emp", &estimators::WindowIndicators::c_emp)
      .def_readonly("n2", &estimators::WindowIndicators::n2)
      .def_readonly("c_emp2", &estimators::WindowIndicators::c_emp2)
      .def_readonly("gamma", &estimators::WindowIndicators::gamma)
      .def_readonly("sigma2_emp", &estimators::WindowIndicators::sigma2_emp)
      .def_readonly("alpha", &estimators::WindowIndicators::alpha);

  py::class_<estimators::IndicatorTrack>(m, "IndicatorTrack")
      .def_readonly("windows", &estimators::IndicatorTrack::windows)
      .def_readonly("x_eq_center", &estimators::IndicatorTrack::x_eq_center)
      .def_readonly("detrend", &estimators::IndicatorTrack::detrend)
      .def_readonly("dt", &estimators::IndicatorTrack::dt)
      .def_readonly("series_length", &estimators::IndicatorTrack::series_length)
      .def_readonly("config_digest", &estimators::IndicatorTrack::config_digest)
      .def("mean_of", [](const estimators::IndicatorTrack& t,
                         const std::string& name) { return t.mean_of(name.c_str()); });

  m.def("indicator_track", &estimators::indicator_track, py::arg("ts"),
        py::arg("config") = estimators::TrackConfig{},
        "Detrend once, then per-window densities, fits and skewness");

  py::class_<estimators::DriftRatio>(m, "DriftRatio")
      .def_readonly("ratio", &estimators::DriftRatio::ratio)
      .def_readonly("quad_coeff", &estimators::DriftRatio::quad_coeff);
  m.def("drift_ratio", &estimators::drift_ratio, py::arg("track"));

  py::class_<estimators::PotentialSurface>(m, "PotentialSurface")
      .def_readonly("time_centers", &estimators::PotentialSurface::time_centers)
      .def_readonly("state_grid", &estimators::PotentialSurface::state_grid)
      .def_readonly("u_emp", &estimators::PotentialSurface::u_emp)
      .def_readonly("parabola_dev", &estimators::PotentialSurface::parabola_dev)
      .def_readonly("support_mask", &estimators::PotentialSurface::support_mask)
      .def("n_windows", &estimators::PotentialSurface::n_windows)
      .def("n_states", &estimators::PotentialSurface::n_states);

  m.def("potential_surface", &estimators::potential_surface, py::arg("ts"),
        py::arg("config") = estimators::TrackConfig{});

  py::class_<significance::SurrogateReport>(m, "SurrogateReport")
      .def_readonly("indicator_name", &significance::SurrogateReport::indicator_name)
      .def_readonly("observed_mean", &significance::SurrogateReport::observed_mean)
      .def_readonly("surrogate_values",
                    &significance::SurrogateReport::surrogate_values)
      .def_readonly("percentile", &significance::SurrogateReport::percentile)
      .def_readonly("n_surrogates", &significance::SurrogateReport::n_surrogates)
      .def_readonly("matched_kappa", &significance::SurrogateReport::matched_kappa)
      .def_readonly("matched_sigma2", &significance::SurrogateReport::matched_sigma2)
      .def_readonly("matched_length", &significance::SurrogateReport::matched_length)
      .def_readonly("matched_dt", &significance::SurrogateReport::matched_dt);

  m.def("surrogate_test", &significance::surrogate_test, py::arg("ts"),
        py::arg("config"), py::arg("indicators") = significance::default_indicators(),
        py::arg("n_surrogates") = 500, py::arg("seed") = 0,
        "Observed indicator means against matched linear surrogates");

  py::class_<significance::SensitivityGrid>(m, "SensitivityGrid")
      .def_readonly("window_fractions",
                    &significance::SensitivityGrid::window_fractions)
      .def_readonly("bandwidth_fractions",
                    &significance::SensitivityGrid::bandwidth_fractions)
      .def_readonly("indicators", &significance::SensitivityGrid::indicators)
      .def_readonly("percentile", &significance::SensitivityGrid::percentile);

  m.def("sensitivity_scan", &significance::sensitivity_scan, py::arg("ts"),
        py::arg("window_fractions"), py::arg("bandwidth_fractions"),
        py::arg("config"),
        py::arg("indicators") = significance::default_indicators(),
        py::arg("n_surrogates") = 500, py::arg("seed") = 0);

  py::class_<pipeline::RecordSpec>(m, "RecordSpec")
      .def(py::init<>())
      .def_readwrite("path", &pipeline::RecordSpec::path)
      .def_readwrite("time_column", &pipeline::RecordSpec::time_column)
      .def_readwrite("value_column", &pipeline::RecordSpec::value_column)
      .def_readwrite("years_bp", &pipeline::RecordSpec::years_bp)
      .def_readwrite("crop", &pipeline::RecordSpec::crop)
      .def_readwrite("resample_dt", &pipeline::RecordSpec::resample_dt)
      .def_readwrite("drop_missing", &pipeline::RecordSpec::drop_missing);

  m.def(
      "ingest",
      [](const pipeline::RecordSpec& spec) { return pipeline::ingest(spec); },
      py::arg("spec"), "Parse, crop, reverse and resample a record file");
}
