#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace softwell::io {

/// Shortest representation that parses back to the identical bits
/// ("nan"/"inf" included); every CSV cell goes through this.
std::string format_double(double v);

/// Inverse of format_double; empty for unparseable text.
std::optional<double> parse_double(std::string_view s);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  char delimiter = ',';
};

/// Reads a delimiter-separated file with a header row. The delimiter is
/// auto-detected among comma, tab and semicolon unless forced.
CsvTable read_csv(const std::string& path, char delimiter = '\0');

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

}  // namespace softwell::io
