#pragma once

#include <string>
#include <vector>

#include "softwell/dynamics.hpp"
#include "softwell/ingest.hpp"
#include "softwell/significance.hpp"
#include "softwell/track.hpp"

namespace softwell::pipeline {

enum class RunMode { simulate, analyze, surrogate, scan, fpsolve, ensemble };

std::string to_string(RunMode mode);
RunMode run_mode_from_string(const std::string& name);

/// Everything a run needs. Defaults are materialized on use and echoed
/// into the run manifest, so a manifest alone reproduces the run.
struct RunConfig {
  RunMode mode = RunMode::simulate;
  std::string out_dir = "out";
  bool svg = false;
  std::uint64_t seed = 0;

  /// Input record (analyze / surrogate / scan).
  RecordSpec record;
  /// Sliding-window analysis settings.
  estimators::TrackConfig track;

  /// simulate: model is "snf" or "linear"; linear reuses dt/n_max/sigma/seed
  /// from the normal-form block.
  std::string sim_model = "snf";
  dynamics::SnfParams snf;
  double linear_kappa = 2.0;

  /// surrogate / scan
  std::size_t n_surrogates = 500;
  std::vector<std::string> indicators = significance::default_indicators();
  std::vector<double> window_fractions;     ///< scan; empty = 7 log2 steps 2^-3..2^0
  std::vector<double> bandwidth_fractions;  ///< scan; empty = 7 log2 steps 2^-6..2^-1

  /// fpsolve: mu sweep (single value when lo == hi)
  double fp_mu_lo = 0.1, fp_mu_hi = 4.0, fp_mu_step = 0.1;
  double fp_sigma = 1.0;
  dynamics::FpGridSpec fp_grid;

  /// ensemble: skewness-vs-mu curves per escape offset
  dynamics::EnsembleParams ensemble;
  std::vector<double> ensemble_b_list;   ///< empty = {ensemble.b}
  std::vector<double> ensemble_mu_list;  ///< empty = {ensemble.mu}
};

struct RunResult {
  std::vector<std::string> artifacts;  ///< paths written, manifest included
};

/// Dispatches to the owning module and writes plot-ready CSV artifacts
/// plus a plain-text key=value manifest capturing every parameter and
/// seed. On error, partial artifacts of this run are removed before the
/// exception propagates.
RunResult run(const RunConfig& config);

/// Serialization used for the manifest; round-trips bitwise.
std::vector<std::pair<std::string, std::string>> to_manifest(const RunConfig& c);
RunConfig config_from_manifest(const std::string& path);

}  // namespace softwell::pipeline
