#include "softwell/runner.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "softwell/csv.hpp"
#include "softwell/errors.hpp"
#include "svg.hpp"

namespace softwell::pipeline {

namespace fs = std::filesystem;
using io::format_double;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::string join_list(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out += (i ? "," : "") + format_double(v[i]);
  return out;
}

std::string join_list(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i];
  return out;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto v = io::parse_double(item);
    if (!v) throw InvalidArgument("manifest: bad numeric list entry '" + item + "'");
    out.push_back(*v);
  }
  return out;
}

std::vector<std::string> parse_string_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

std::string cell(double v) { return format_double(v); }

std::string opt_cell(const std::optional<double>& v) {
  return format_double(v ? *v : kNaN);
}

// Tracks artifacts of one run; on error everything written so far is
// removed so no partial output survives.
class ArtifactSink {
public:
  explicit ArtifactSink(std::string dir) : dir_(std::move(dir)) {
    fs::create_directories(dir_);
  }
  std::string path(const std::string& name) const { return dir_ + "/" + name; }
  void note(const std::string& p) { written_.push_back(p); }
  void csv(const std::string& name, const std::vector<std::string>& header,
           const std::vector<std::vector<std::string>>& rows) {
    const std::string p = path(name);
    io::write_csv(p, header, rows);
    written_.push_back(p);
  }
  void discard_all() {
    for (const auto& p : written_) {
      std::error_code ec;
      fs::remove(p, ec);
    }
  }
  const std::vector<std::string>& written() const { return written_; }

private:
  std::string dir_;
  std::vector<std::string> written_;
};

void write_manifest(ArtifactSink& sink, const RunConfig& c,
                    const std::vector<std::pair<std::string, std::string>>& extra) {
  const std::string p = sink.path("run.manifest");
  std::ofstream out(p);
  if (!out) throw Error("cannot write manifest: " + p);
  for (const auto& [k, v] : to_manifest(c)) out << k << "=" << v << "\n";
  for (const auto& [k, v] : extra) out << "info_" << k << "=" << v << "\n";
  if (!out) throw Error("manifest write failed: " + p);
  sink.note(p);
}

void run_simulate(const RunConfig& c, ArtifactSink& sink,
                  std::vector<std::pair<std::string, std::string>>& info) {
  TimeSeries ts;
  if (c.sim_model == "snf") {
    ts = dynamics::simulate_snf(c.snf);
  } else if (c.sim_model == "linear") {
    ts = dynamics::simulate_linear(c.linear_kappa, c.snf.sigma, c.snf.dt,
                                   c.snf.n_max, c.snf.seed);
  } else {
    throw InvalidArgument("simulate: unknown model '" + c.sim_model + "'");
  }
  std::vector<std::vector<std::string>> rows;
  rows.reserve(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i)
    rows.push_back({cell(ts.times[i]), cell(ts.values[i])});
  sink.csv("series.csv", {"time", "value"}, rows);
  info.emplace_back("censored", ts.censored ? "true" : "false");
  info.emplace_back("length", std::to_string(ts.size()));
}

TimeSeries load_input(const RunConfig& c,
                      std::vector<std::pair<std::string, std::string>>& info) {
  if (c.record.path.empty())
    throw InvalidArgument(to_string(c.mode) + ": an input file is required");
  IngestInfo ii;
  TimeSeries ts = ingest(c.record, &ii);
  info.emplace_back("rows_raw", std::to_string(ii.rows_raw));
  info.emplace_back("rows_cropped", std::to_string(ii.rows_cropped));
  info.emplace_back("rows_dropped", std::to_string(ii.rows_dropped));
  info.emplace_back("rows_out", std::to_string(ii.rows_out));
  info.emplace_back("resample_dt_used", format_double(ii.resample_dt));
  info.emplace_back("interpolated", ii.interpolated ? "true" : "false");
  return ts;
}

void run_analyze(const RunConfig& c, ArtifactSink& sink,
                 std::vector<std::pair<std::string, std::string>>& info) {
  const TimeSeries ts = load_input(c, info);
  const auto track = estimators::indicator_track(ts, c.track);

  std::vector<std::vector<std::string>> rows;
  rows.reserve(track.windows.size());
  for (const auto& w : track.windows) {
    rows.push_back({cell(w.t_center), opt_cell(w.kappa_acf), opt_cell(w.kappa_u),
                    opt_cell(w.c_emp), opt_cell(w.n2), opt_cell(w.c_emp2),
                    opt_cell(w.gamma), opt_cell(w.sigma2_emp)});
  }
  sink.csv("track.csv",
           {"t_center", "kappa_acf", "kappa_u", "c_emp", "n2", "c_emp2", "gamma",
            "sigma2_emp"},
           rows);

  const auto surface = estimators::potential_surface(ts, c.track);
  std::vector<std::vector<std::string>> srows;
  srows.reserve(surface.n_windows() * surface.n_states());
  for (std::size_t w = 0; w < surface.n_windows(); ++w) {
    for (std::size_t g = 0; g < surface.n_states(); ++g) {
      srows.push_back({cell(surface.time_centers[w]), cell(surface.state_grid[g]),
                       cell(surface.at(surface.u_emp, w, g)),
                       cell(surface.at(surface.parabola_dev, w, g)),
                       surface.support_mask[w * surface.n_states() + g] ? "1" : "0"});
    }
  }
  sink.csv("surface.csv", {"t", "x", "u_emp", "parabola_dev", "supported"}, srows);
  info.emplace_back("config_digest", std::to_string(track.config_digest));
  info.emplace_back("n_windows", std::to_string(track.windows.size()));

  if (c.svg) {
    detail::SvgSeries ka{"kappa_acf", {}, {}}, ku{"kappa_u", {}, {}};
    detail::SvgSeries ce{"c_emp", {}, {}}, n2{"n2", {}, {}}, ga{"gamma", {}, {}};
    for (const auto& w : track.windows) {
      ka.x.push_back(w.t_center);
      ka.y.push_back(w.kappa_acf.value_or(kNaN));
      ku.x.push_back(w.t_center);
      ku.y.push_back(w.kappa_u.value_or(kNaN));
      ce.x.push_back(w.t_center);
      ce.y.push_back(w.c_emp.value_or(kNaN));
      n2.x.push_back(w.t_center);
      n2.y.push_back(w.n2.value_or(kNaN));
      ga.x.push_back(w.t_center);
      ga.y.push_back(w.gamma.value_or(kNaN));
    }
    detail::write_line_chart(sink.path("track_linear.svg"), "decay rates", {ka, ku});
    sink.note(sink.path("track_linear.svg"));
    detail::write_line_chart(sink.path("track_nonlinear.svg"),
                             "nonlinearity indicators", {ce, n2, ga});
    sink.note(sink.path("track_nonlinear.svg"));
  }
}

void run_surrogate(const RunConfig& c, ArtifactSink& sink,
                   std::vector<std::pair<std::string, std::string>>& info) {
  const TimeSeries ts = load_input(c, info);
  const auto reports = significance::surrogate_test(ts, c.track, c.indicators,
                                                    c.n_surrogates, c.seed);
  std::vector<std::vector<std::string>> hrows, srows;
  for (const auto& rep : reports) {
    for (double v : rep.surrogate_values)
      hrows.push_back({rep.indicator_name, cell(v)});
    srows.push_back({rep.indicator_name, cell(rep.observed_mean),
                     cell(rep.percentile)});
  }
  sink.csv("surrogate_histogram.csv", {"indicator", "value"}, hrows);
  sink.csv("surrogate_summary.csv", {"indicator", "observed_mean", "percentile"},
           srows);
  if (!reports.empty()) {
    info.emplace_back("matched_kappa", format_double(reports[0].matched_kappa));
    info.emplace_back("matched_sigma2", format_double(reports[0].matched_sigma2));
    info.emplace_back("matched_length", std::to_string(reports[0].matched_length));
    info.emplace_back("matched_dt", format_double(reports[0].matched_dt));
    info.emplace_back("config_digest", std::to_string(reports[0].config_digest));
  }
  if (c.svg) {
    for (const auto& rep : reports) {
      const std::string p = sink.path("surrogate_" + rep.indicator_name + ".svg");
      detail::write_histogram(p, rep.indicator_name + " vs linear surrogates",
                              rep.surrogate_values, rep.observed_mean);
      sink.note(p);
    }
  }
}

void run_scan(const RunConfig& c, ArtifactSink& sink,
              std::vector<std::pair<std::string, std::string>>& info) {
  const TimeSeries ts = load_input(c, info);
  std::vector<double> wf = c.window_fractions;
  std::vector<double> bf = c.bandwidth_fractions;
  if (wf.empty())
    for (int i = 0; i < 7; ++i) wf.push_back(std::exp2(-3.0 + 0.5 * i));
  if (bf.empty())
    for (int i = 0; i < 7; ++i) bf.push_back(std::exp2(-6.0 + 5.0 / 6.0 * i));

  const auto grid = significance::sensitivity_scan(ts, wf, bf, c.track,
                                                   c.indicators, c.n_surrogates,
                                                   c.seed);
  for (std::size_t k = 0; k < grid.indicators.size(); ++k) {
    std::vector<std::string> header = {"bandwidth_fraction"};
    for (double w : grid.window_fractions) header.push_back(format_double(w));
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < grid.bandwidth_fractions.size(); ++i) {
      std::vector<std::string> row = {cell(grid.bandwidth_fractions[i])};
      for (std::size_t j = 0; j < grid.window_fractions.size(); ++j)
        row.push_back(cell(grid.at(k, i, j)));
      rows.push_back(std::move(row));
    }
    sink.csv("scan_" + grid.indicators[k] + ".csv", header, rows);
  }
  std::vector<std::vector<std::string>> crows;
  for (const auto& seg : significance::contour_segments(grid))
    crows.push_back({seg.indicator, cell(seg.level), cell(seg.x0), cell(seg.y0),
                     cell(seg.x1), cell(seg.y1)});
  sink.csv("scan_contours.csv",
           {"indicator", "level", "log2_wf_0", "log2_bf_0", "log2_wf_1",
            "log2_bf_1"},
           crows);
}

void run_fpsolve(const RunConfig& c, ArtifactSink& sink,
                 std::vector<std::pair<std::string, std::string>>& info) {
  if (!(c.fp_mu_step > 0) && c.fp_mu_hi != c.fp_mu_lo)
    throw InvalidArgument("fpsolve: mu step must be positive");
  std::vector<double> mus;
  for (double mu = c.fp_mu_lo; mu <= c.fp_mu_hi + 1e-12 * std::abs(c.fp_mu_hi);
       mu += c.fp_mu_step) {
    mus.push_back(mu);
    if (c.fp_mu_hi == c.fp_mu_lo) break;
  }

  std::vector<std::vector<std::string>> rows;
  dynamics::FpSolution last;
  for (double mu : mus) {
    last = dynamics::stationary_fp_solve(mu, c.fp_sigma, c.fp_grid);
    rows.push_back({cell(mu), cell(last.mean), cell(last.variance),
                    cell(last.skewness), cell(last.c)});
  }
  sink.csv("fp_sweep.csv", {"mu", "mean", "variance", "skewness", "c"}, rows);
  info.emplace_back("n_mu", std::to_string(mus.size()));

  if (mus.size() == 1) {
    std::vector<std::vector<std::string>> drows;
    for (std::size_t i = 0; i < last.grid.size(); ++i)
      drows.push_back({cell(last.grid[i]), cell(last.p[i])});
    sink.csv("fp_density.csv", {"x", "p"}, drows);
  }
  if (c.svg) {
    detail::SvgSeries mean{"mean", {}, {}}, var{"variance", {}, {}},
        skew{"skewness", {}, {}}, cc{"c", {}, {}};
    for (std::size_t i = 0; i < mus.size(); ++i) {
      const auto& row = rows[i];
      mean.x.push_back(mus[i]);
      var.x.push_back(mus[i]);
      skew.x.push_back(mus[i]);
      cc.x.push_back(mus[i]);
      mean.y.push_back(*io::parse_double(row[1]));
      var.y.push_back(*io::parse_double(row[2]));
      skew.y.push_back(*io::parse_double(row[3]));
      cc.y.push_back(*io::parse_double(row[4]));
    }
    detail::write_line_chart(sink.path("fp_sweep.svg"),
                             "stationary density statistics vs mu",
                             {mean, var, skew, cc});
    sink.note(sink.path("fp_sweep.svg"));
  }
}

void run_ensemble(const RunConfig& c, ArtifactSink& sink,
                  std::vector<std::pair<std::string, std::string>>& info) {
  std::vector<double> bs = c.ensemble_b_list;
  std::vector<double> mus = c.ensemble_mu_list;
  if (bs.empty()) bs.push_back(c.ensemble.b);
  if (mus.empty()) mus.push_back(c.ensemble.mu);

  std::vector<std::vector<std::string>> rows;
  dynamics::EnsembleResult last;
  for (std::size_t bi = 0; bi < bs.size(); ++bi) {
    for (std::size_t mj = 0; mj < mus.size(); ++mj) {
      dynamics::EnsembleParams p = c.ensemble;
      p.b = bs[bi];
      p.mu = mus[mj];
      p.seed = splitmix64(c.ensemble.seed ^
                          ((static_cast<std::uint64_t>(bi) << 32) |
                           static_cast<std::uint64_t>(mj)));
      last = dynamics::conditional_ensemble(p);
      rows.push_back({cell(p.b), cell(p.mu), cell(last.skewness), cell(last.mean),
                      cell(last.variance), std::to_string(last.pooled_count),
                      std::to_string(last.escaped_total)});
    }
  }
  sink.csv("ensemble_skewness.csv",
           {"b", "mu", "skewness", "mean", "variance", "pooled", "escaped"}, rows);
  if (bs.size() == 1 && mus.size() == 1) {
    std::vector<std::vector<std::string>> drows;
    for (std::size_t i = 0; i < last.density.size(); ++i)
      drows.push_back({cell(last.density.grid[i]), cell(last.density.p[i])});
    sink.csv("ensemble_density.csv", {"x", "p"}, drows);
  }
  info.emplace_back("cells", std::to_string(rows.size()));
  if (c.svg) {
    std::vector<detail::SvgSeries> series;
    for (std::size_t bi = 0; bi < bs.size(); ++bi) {
      detail::SvgSeries s{"b=" + format_double(bs[bi]), {}, {}};
      for (std::size_t mj = 0; mj < mus.size(); ++mj) {
        s.x.push_back(mus[mj]);
        s.y.push_back(*io::parse_double(rows[bi * mus.size() + mj][2]));
      }
      series.push_back(std::move(s));
    }
    detail::write_line_chart(sink.path("ensemble_skewness.svg"),
                             "conditional skewness vs mu", series);
    sink.note(sink.path("ensemble_skewness.svg"));
  }
}

}  // namespace

std::string to_string(RunMode mode) {
  switch (mode) {
    case RunMode::simulate: return "simulate";
    case RunMode::analyze: return "analyze";
    case RunMode::surrogate: return "surrogate";
    case RunMode::scan: return "scan";
    case RunMode::fpsolve: return "fpsolve";
    case RunMode::ensemble: return "ensemble";
  }
  return "simulate";
}

RunMode run_mode_from_string(const std::string& name) {
  if (name == "simulate") return RunMode::simulate;
  if (name == "analyze") return RunMode::analyze;
  if (name == "surrogate") return RunMode::surrogate;
  if (name == "scan") return RunMode::scan;
  if (name == "fpsolve") return RunMode::fpsolve;
  if (name == "ensemble") return RunMode::ensemble;
  throw InvalidArgument("unknown mode: " + name);
}

std::vector<std::pair<std::string, std::string>> to_manifest(const RunConfig& c) {
  std::vector<std::pair<std::string, std::string>> kv;
  auto add = [&](const std::string& k, const std::string& v) {
    kv.emplace_back(k, v);
  };
  add("mode", to_string(c.mode));
  add("out", c.out_dir);
  add("svg", c.svg ? "true" : "false");
  add("seed", std::to_string(c.seed));

  add("input", c.record.path);
  add("time_col", c.record.time_column);
  add("value_col", c.record.value_column);
  add("bp", c.record.years_bp ? "true" : "false");
  add("crop", c.record.crop ? format_double(c.record.crop->first) + ":" +
                                  format_double(c.record.crop->second)
                            : "none");
  add("resample_dt", format_double(c.record.resample_dt));
  add("drop_missing", c.record.drop_missing ? "true" : "false");

  add("window", format_double(c.track.window));
  add("step", std::to_string(c.track.step));
  add("detrend_bandwidth", format_double(c.track.detrend_bandwidth));
  add("kde_grid", std::to_string(c.track.kde.n_grid));
  add("kde_bandwidth", format_double(c.track.kde.bandwidth));
  add("kde_support_floor", format_double(c.track.kde.support_floor));
  add("kde_selector_bins", std::to_string(c.track.kde.selector_bins));
  add("min_window", std::to_string(c.track.min_window));

  add("model", c.sim_model);
  add("mu0", format_double(c.snf.mu0));
  add("epsilon", format_double(c.snf.epsilon));
  add("sigma", format_double(c.snf.sigma));
  add("dt", format_double(c.snf.dt));
  add("n_max", std::to_string(c.snf.n_max));
  add("x0", format_double(c.snf.x0));
  add("escape_level", format_double(c.snf.escape_level));
  add("sim_seed", std::to_string(c.snf.seed));
  add("linear_kappa", format_double(c.linear_kappa));

  add("surrogates", std::to_string(c.n_surrogates));
  add("indicators", join_list(c.indicators));
  add("window_fractions", join_list(c.window_fractions));
  add("bandwidth_fractions", join_list(c.bandwidth_fractions));

  add("fp_mu_lo", format_double(c.fp_mu_lo));
  add("fp_mu_hi", format_double(c.fp_mu_hi));
  add("fp_mu_step", format_double(c.fp_mu_step));
  add("fp_sigma", format_double(c.fp_sigma));
  add("fp_n_points", std::to_string(c.fp_grid.n_points));
  add("fp_lo", c.fp_grid.lo ? format_double(*c.fp_grid.lo) : "auto");
  add("fp_hi", c.fp_grid.hi ? format_double(*c.fp_grid.hi) : "auto");
  add("fp_boundary_floor", format_double(c.fp_grid.boundary_floor));
  add("fp_residual_tol", format_double(c.fp_grid.residual_tol));

  add("ens_n", std::to_string(c.ensemble.n_realizations));
  add("ens_mu", format_double(c.ensemble.mu));
  add("ens_sigma", format_double(c.ensemble.sigma));
  add("ens_b", format_double(c.ensemble.b));
  add("ens_dt", format_double(c.ensemble.dt));
  add("ens_burn_in", std::to_string(c.ensemble.burn_in));
  add("ens_horizon", std::to_string(c.ensemble.horizon));
  add("ens_bins", std::to_string(c.ensemble.n_bins));
  add("ens_seed", std::to_string(c.ensemble.seed));
  add("ens_b_list", join_list(c.ensemble_b_list));
  add("ens_mu_list", join_list(c.ensemble_mu_list));
  return kv;
}

RunConfig config_from_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open manifest: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto eq = line.find('=');
    if (eq == std::string::npos || line.empty()) continue;
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  auto get = [&](const std::string& k) -> const std::string& {
    const auto it = kv.find(k);
    if (it == kv.end())
      throw InvalidArgument("manifest missing key '" + k + "' in " + path);
    return it->second;
  };
  auto num = [&](const std::string& k) {
    const auto v = io::parse_double(get(k));
    if (!v) throw InvalidArgument("manifest: bad number for key '" + k + "'");
    return *v;
  };
  auto uint = [&](const std::string& k) {
    return static_cast<std::uint64_t>(std::stoull(get(k)));
  };
  auto flag = [&](const std::string& k) { return get(k) == "true"; };

  RunConfig c;
  c.mode = run_mode_from_string(get("mode"));
  c.out_dir = get("out");
  c.svg = flag("svg");
  c.seed = uint("seed");

  c.record.path = get("input");
  c.record.time_column = get("time_col");
  c.record.value_column = get("value_col");
  c.record.years_bp = flag("bp");
  if (const std::string& crop = get("crop"); crop != "none") {
    const auto colon = crop.find(':');
    if (colon == std::string::npos)
      throw InvalidArgument("manifest: bad crop range");
    c.record.crop = {*io::parse_double(crop.substr(0, colon)),
                     *io::parse_double(crop.substr(colon + 1))};
  }
  c.record.resample_dt = num("resample_dt");
  c.record.drop_missing = flag("drop_missing");

  c.track.window = num("window");
  c.track.step = static_cast<std::size_t>(uint("step"));
  c.track.detrend_bandwidth = num("detrend_bandwidth");
  c.track.kde.n_grid = static_cast<int>(uint("kde_grid"));
  c.track.kde.bandwidth = num("kde_bandwidth");
  c.track.kde.support_floor = num("kde_support_floor");
  c.track.kde.selector_bins = static_cast<int>(uint("kde_selector_bins"));
  c.track.min_window = static_cast<std::size_t>(uint("min_window"));

  c.sim_model = get("model");
  c.snf.mu0 = num("mu0");
  c.snf.epsilon = num("epsilon");
  c.snf.sigma = num("sigma");
  c.snf.dt = num("dt");
  c.snf.n_max = static_cast<std::size_t>(uint("n_max"));
  c.snf.x0 = num("x0");
  c.snf.escape_level = num("escape_level");
  c.snf.seed = uint("sim_seed");
  c.linear_kappa = num("linear_kappa");

  c.n_surrogates = static_cast<std::size_t>(uint("surrogates"));
  if (const std::string& s = get("indicators"); !s.empty())
    c.indicators = parse_string_list(s);
  if (const std::string& s = get("window_fractions"); !s.empty())
    c.window_fractions = parse_list(s);
  if (const std::string& s = get("bandwidth_fractions"); !s.empty())
    c.bandwidth_fractions = parse_list(s);

  c.fp_mu_lo = num("fp_mu_lo");
  c.fp_mu_hi = num("fp_mu_hi");
  c.fp_mu_step = num("fp_mu_step");
  c.fp_sigma = num("fp_sigma");
  c.fp_grid.n_points = static_cast<int>(uint("fp_n_points"));
  if (get("fp_lo") != "auto") c.fp_grid.lo = num("fp_lo");
  if (get("fp_hi") != "auto") c.fp_grid.hi = num("fp_hi");
  c.fp_grid.boundary_floor = num("fp_boundary_floor");
  c.fp_grid.residual_tol = num("fp_residual_tol");

  c.ensemble.n_realizations = static_cast<std::size_t>(uint("ens_n"));
  c.ensemble.mu = num("ens_mu");
  c.ensemble.sigma = num("ens_sigma");
  c.ensemble.b = num("ens_b");
  c.ensemble.dt = num("ens_dt");
  c.ensemble.burn_in = static_cast<std::size_t>(uint("ens_burn_in"));
  c.ensemble.horizon = static_cast<std::size_t>(uint("ens_horizon"));
  c.ensemble.n_bins = static_cast<std::size_t>(uint("ens_bins"));
  c.ensemble.seed = uint("ens_seed");
  if (const std::string& s = get("ens_b_list"); !s.empty())
    c.ensemble_b_list = parse_list(s);
  if (const std::string& s = get("ens_mu_list"); !s.empty())
    c.ensemble_mu_list = parse_list(s);
  return c;
}

RunResult run(const RunConfig& config) {
  ArtifactSink sink(config.out_dir);
  std::vector<std::pair<std::string, std::string>> info;
  try {
    switch (config.mode) {
      case RunMode::simulate: run_simulate(config, sink, info); break;
      case RunMode::analyze: run_analyze(config, sink, info); break;
      case RunMode::surrogate: run_surrogate(config, sink, info); break;
      case RunMode::scan: run_scan(config, sink, info); break;
      case RunMode::fpsolve: run_fpsolve(config, sink, info); break;
      case RunMode::ensemble: run_ensemble(config, sink, info); break;
    }
    write_manifest(sink, config, info);
  } catch (...) {
    sink.discard_all();
    throw;
  }
  return RunResult{sink.written()};
}

}  // namespace softwell::pipeline
