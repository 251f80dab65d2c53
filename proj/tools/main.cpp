#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <string>

#include "softwell/csv.hpp"
#include "softwell/errors.hpp"
#include "softwell/runner.hpp"

namespace {

using softwell::pipeline::RunConfig;
using softwell::pipeline::RunMode;

std::pair<double, double> parse_range(const std::string& s, const char* what) {
  const auto colon = s.find(':');
  if (colon == std::string::npos)
    throw softwell::InvalidArgument(std::string(what) + " expects A:B");
  const auto a = softwell::io::parse_double(s.substr(0, colon));
  const auto b = softwell::io::parse_double(s.substr(colon + 1));
  if (!a || !b)
    throw softwell::InvalidArgument(std::string(what) + " expects numbers A:B");
  return {*a, *b};
}

void add_input_options(CLI::App* cmd, RunConfig& cfg, std::string& crop) {
  cmd->add_option("--input", cfg.record.path, "input record (CSV/TSV with header)")
      ->required();
  cmd->add_option("--time-col", cfg.record.time_column,
                  "time column name or index");
  cmd->add_option("--value-col", cfg.record.value_column,
                  "value column name or index");
  cmd->add_flag("--bp", cfg.record.years_bp,
                "time axis is years before present (reversed on ingestion)");
  cmd->add_option("--crop", crop, "analysis range A:B on the native time axis");
  cmd->add_option("--resample-dt", cfg.record.resample_dt,
                  "uniform spacing to interpolate onto (0 = median spacing)");
  cmd->add_flag("--drop-missing", cfg.record.drop_missing,
                "drop rows with missing values instead of failing");
}

void add_track_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--window", cfg.track.window,
                  "sliding window: fraction of N if <= 1, else samples");
  cmd->add_option("--step", cfg.track.step, "window advance in samples");
  cmd->add_option("--bandwidth", cfg.track.detrend_bandwidth,
                  "detrending bandwidth: fraction of N if <= 1, else samples "
                  "(0 = N/20)");
  cmd->add_option("--kde-bandwidth", cfg.track.kde.bandwidth,
                  "fixed KDE bandwidth (0 = automatic selection)");
  cmd->add_option("--kde-grid", cfg.track.kde.n_grid, "density grid points");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "softwell: nonlinear softening indicators for noisy time series"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string crop, mu_range, b_list, mu_list;

  auto* sim = app.add_subcommand("simulate",
                                 "generate a normal-form or linear series");
  sim->add_option("--model", cfg.sim_model, "snf or linear");
  sim->add_option("--mu0", cfg.snf.mu0, "initial control parameter");
  sim->add_option("--epsilon", cfg.snf.epsilon, "drift rate of mu");
  sim->add_option("--sigma", cfg.snf.sigma, "noise amplitude");
  sim->add_option("--dt", cfg.snf.dt, "sampling step");
  sim->add_option("--n", cfg.snf.n_max, "maximum sample count");
  sim->add_option("--x0", cfg.snf.x0, "initial state");
  sim->add_option("--escape-level", cfg.snf.escape_level,
                  "censoring level (crossing sample kept)");
  sim->add_option("--kappa", cfg.linear_kappa, "decay rate of the linear model");

  auto* analyze =
      app.add_subcommand("analyze", "indicator track and potential surface");
  add_input_options(analyze, cfg, crop);
  add_track_options(analyze, cfg);

  auto* surrogate = app.add_subcommand(
      "surrogate", "significance of indicators against linear surrogates");
  add_input_options(surrogate, cfg, crop);
  add_track_options(surrogate, cfg);
  surrogate->add_option("--surrogates", cfg.n_surrogates,
                        "number of linear surrogate series");
  surrogate->add_option("--indicators", cfg.indicators,
                        "indicators to score (default c_emp n2 gamma)");

  auto* scan = app.add_subcommand(
      "scan", "surrogate percentiles over window/bandwidth grids");
  add_input_options(scan, cfg, crop);
  add_track_options(scan, cfg);
  scan->add_option("--surrogates", cfg.n_surrogates, "surrogates per cell");
  scan->add_option("--indicators", cfg.indicators, "indicators to score");
  scan->add_option("--window-fractions", cfg.window_fractions,
                   "window-length fractions (default 7 log2 steps 1/8..1)");
  scan->add_option("--bandwidth-fractions", cfg.bandwidth_fractions,
                   "bandwidth fractions (default 7 log2 steps 1/64..1/2)");

  auto* fpsolve = app.add_subcommand(
      "fpsolve", "stationary Fokker-Planck statistics of the normal form");
  fpsolve->add_option("--mu-range", mu_range, "mu sweep LO:HI (single value A:A)");
  fpsolve->add_option("--mu-step", cfg.fp_mu_step, "mu sweep step");
  fpsolve->add_option("--sigma", cfg.fp_sigma, "noise amplitude");
  fpsolve->add_option("--points", cfg.fp_grid.n_points, "base grid resolution");

  auto* ensemble = app.add_subcommand(
      "ensemble", "conditional (non-escaped) ensemble statistics");
  ensemble->add_option("--n", cfg.ensemble.n_realizations, "ensemble size");
  ensemble->add_option("--mu", mu_list,
                       "control parameter(s), comma separated or LO:HI:STEP");
  ensemble->add_option("--b", b_list, "escape offset(s), comma separated");
  ensemble->add_option("--sigma", cfg.ensemble.sigma, "noise amplitude");
  ensemble->add_option("--dt", cfg.ensemble.dt, "integration step");
  ensemble->add_option("--burn-in", cfg.ensemble.burn_in, "steps discarded");
  ensemble->add_option("--horizon", cfg.ensemble.horizon, "total steps");

  for (auto* cmd : {sim, analyze, surrogate, scan, fpsolve, ensemble}) {
    cmd->add_option("--seed", cfg.seed, "base RNG seed");
    cmd->add_option("--out", cfg.out_dir, "output directory");
    cmd->add_flag("--svg", cfg.svg, "also write quick-look SVG plots");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) cfg.mode = RunMode::simulate;
    if (analyze->parsed()) cfg.mode = RunMode::analyze;
    if (surrogate->parsed()) cfg.mode = RunMode::surrogate;
    if (scan->parsed()) cfg.mode = RunMode::scan;
    if (fpsolve->parsed()) cfg.mode = RunMode::fpsolve;
    if (ensemble->parsed()) cfg.mode = RunMode::ensemble;

    cfg.snf.seed = cfg.seed;
    cfg.ensemble.seed = cfg.seed;
    if (!crop.empty()) cfg.record.crop = parse_range(crop, "--crop");
    if (!mu_range.empty()) {
      const auto [lo, hi] = parse_range(mu_range, "--mu-range");
      cfg.fp_mu_lo = lo;
      cfg.fp_mu_hi = hi;
    }
    auto parse_values = [](const std::string& s) {
      std::vector<double> out;
      if (s.find(':') != std::string::npos) {
        // LO:HI or LO:HI:STEP
        std::vector<std::string> parts;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= s.size(); ++i) {
          if (i == s.size() || s[i] == ':') {
            parts.push_back(s.substr(start, i - start));
            start = i + 1;
          }
        }
        const double lo = *softwell::io::parse_double(parts.at(0));
        const double hi = *softwell::io::parse_double(parts.at(1));
        const double step =
            parts.size() > 2 ? *softwell::io::parse_double(parts[2]) : (hi - lo) / 10;
        for (double v = lo; v <= hi + 1e-12 * std::abs(hi); v += step) {
          out.push_back(v);
          if (step <= 0) break;
        }
      } else {
        std::size_t start = 0;
        for (std::size_t i = 0; i <= s.size(); ++i) {
          if (i == s.size() || s[i] == ',') {
            if (i > start)
              out.push_back(*softwell::io::parse_double(s.substr(start, i - start)));
            start = i + 1;
          }
        }
      }
      return out;
    };
    if (!b_list.empty()) cfg.ensemble_b_list = parse_values(b_list);
    if (!mu_list.empty()) cfg.ensemble_mu_list = parse_values(mu_list);

    const auto result = softwell::pipeline::run(cfg);
    for (const auto& p : result.artifacts) std::printf("wrote %s\n", p.c_str());
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
