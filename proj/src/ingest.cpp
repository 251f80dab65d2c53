#include "softwell/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "softwell/csv.hpp"
#include "softwell/errors.hpp"
#include "softwell/util.hpp"

namespace softwell::pipeline {

namespace {

std::size_t resolve_column(const io::CsvTable& table, const std::string& spec) {
  for (std::size_t i = 0; i < table.header.size(); ++i)
    if (table.header[i] == spec) return i;
  // Not a header name; try a zero-based index.
  try {
    const std::size_t idx = std::stoul(spec);
    if (idx < table.header.size()) return idx;
  } catch (...) {
  }
  throw IngestError("column '" + spec + "' not found in header");
}

}  // namespace

TimeSeries ingest(const RecordSpec& spec, IngestInfo* info) {
  const io::CsvTable table = io::read_csv(spec.path);
  const std::size_t tcol = resolve_column(table, spec.time_column);
  const std::size_t vcol = resolve_column(table, spec.value_column);

  IngestInfo local;
  local.delimiter = table.delimiter;
  local.rows_raw = table.rows.size();

  std::vector<double> times, values;
  std::vector<std::size_t> bad_rows;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const auto t = tcol < row.size() ? io::parse_double(row[tcol]) : std::nullopt;
    const auto v = vcol < row.size() ? io::parse_double(row[vcol]) : std::nullopt;
    if (!t || !v || !std::isfinite(*t) || !std::isfinite(*v)) {
      if (spec.drop_missing) {
        ++local.rows_dropped;
        continue;
      }
      bad_rows.push_back(r + 2);  // 1-based, counting the header line
      continue;
    }
    times.push_back(*t);
    values.push_back(*v);
  }
  if (!bad_rows.empty()) {
    std::string msg = "missing or unparseable values in " + spec.path + " at line";
    msg += bad_rows.size() > 1 ? "s" : "";
    for (std::size_t i = 0; i < std::min<std::size_t>(bad_rows.size(), 10); ++i)
      msg += (i ? "," : "") + std::string(" ") + std::to_string(bad_rows[i]);
    if (bad_rows.size() > 10) msg += ", ...";
    msg += " (pass drop-missing to skip such rows)";
    throw IngestError(msg);
  }

  if (spec.crop) {
    const double lo = std::min(spec.crop->first, spec.crop->second);
    const double hi = std::max(spec.crop->first, spec.crop->second);
    std::vector<double> ct, cv;
    for (std::size_t i = 0; i < times.size(); ++i) {
      if (times[i] >= lo && times[i] <= hi) {
        ct.push_back(times[i]);
        cv.push_back(values[i]);
      }
    }
    times.swap(ct);
    values.swap(cv);
  }
  local.rows_cropped = times.size();
  if (times.size() < 3)
    throw IngestError("fewer than 3 rows in the crop range of " + spec.path);

  if (spec.years_bp) {
    // Years before present decrease toward the event; negating the axis
    // turns it into forward time.
    for (double& t : times) t = -t;
    if (times.front() > times.back()) {
      std::reverse(times.begin(), times.end());
      std::reverse(values.begin(), values.end());
    }
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1]))
      throw IngestError("timestamps not strictly increasing after direction "
                        "handling near data row " +
                        std::to_string(i + 1) + " of the cropped range");
  }

  std::vector<double> spacing(times.size() - 1);
  for (std::size_t i = 1; i < times.size(); ++i)
    spacing[i - 1] = times[i] - times[i - 1];
  const double dt =
      spec.resample_dt > 0 ? spec.resample_dt : util::median(spacing);
  if (!(dt > 0)) throw IngestError("non-positive resampling step");
  local.resample_dt = dt;

  // Pass an already-uniform record through untouched.
  bool uniform = spec.resample_dt == 0.0;
  if (uniform) {
    for (double s : spacing) {
      if (std::abs(s - dt) > 1e-9 * dt) {
        uniform = false;
        break;
      }
    }
  }

  TimeSeries ts;
  if (uniform) {
    ts.times = std::move(times);
    ts.values = std::move(values);
    local.interpolated = false;
  } else {
    const double t0 = times.front();
    const double t_end = times.back();
    const auto n_out =
        static_cast<std::size_t>(std::floor((t_end - t0) / dt * (1 + 1e-12))) + 1;
    ts.times.resize(n_out);
    ts.values.resize(n_out);
    std::size_t j = 0;
    for (std::size_t k = 0; k < n_out; ++k) {
      const double t = t0 + static_cast<double>(k) * dt;
      while (j + 2 < times.size() && times[j + 1] <= t) ++j;
      const double f = (t - times[j]) / (times[j + 1] - times[j]);
      ts.times[k] = t;
      ts.values[k] = values[j] + std::clamp(f, 0.0, 1.0) * (values[j + 1] - values[j]);
    }
    local.interpolated = true;
  }
  ts.uniform_dt = dt;
  local.rows_out = ts.size();
  ts.validate();
  if (info) *info = local;
  return ts;
}

}  // namespace softwell::pipeline
