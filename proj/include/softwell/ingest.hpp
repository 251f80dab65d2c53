#pragma once

#include <optional>
#include <string>
#include <utility>

#include "softwell/types.hpp"

namespace softwell::pipeline {

/// Where and how to read a record file.
struct RecordSpec {
  std::string path;
  std::string time_column = "0";   ///< header name or zero-based index
  std::string value_column = "1";  ///< header name or zero-based index
  /// Time axis direction: years-before-present axes decrease toward the
  /// event and are reversed to forward time on ingestion.
  bool years_bp = false;
  /// Analysis range on the file's native time axis, inclusive; bounds may
  /// come in either order.
  std::optional<std::pair<double, double>> crop;
  /// Target uniform spacing; 0 means "auto" (median raw spacing).
  double resample_dt = 0.0;
  /// Drop rows with missing/unparseable values instead of failing.
  bool drop_missing = false;
};

/// Provenance of an ingested record, echoed into the run manifest.
struct IngestInfo {
  std::size_t rows_raw = 0;      ///< parsed data rows in the file
  std::size_t rows_cropped = 0;  ///< rows inside the crop range
  std::size_t rows_dropped = 0;  ///< rows removed by drop_missing
  std::size_t rows_out = 0;      ///< samples after resampling
  double resample_dt = 0.0;      ///< spacing actually used
  bool interpolated = false;     ///< false when the record was already uniform
  char delimiter = ',';
};

/// Parses a delimiter-separated record (delimiter auto-detected among
/// comma, tab and semicolon; header row required), selects the time and
/// value columns, reverses years-BP axes to forward time, crops, and
/// linearly interpolates onto a uniform grid. Already-uniform records are
/// passed through unchanged. Timestamps that are non-monotone after
/// direction handling raise IngestError naming the offending rows.
TimeSeries ingest(const RecordSpec& spec, IngestInfo* info = nullptr);

}  // namespace softwell::pipeline
