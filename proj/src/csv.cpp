#include "softwell/csv.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <system_error>

#include "softwell/errors.hpp"

namespace softwell::io {

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::optional<double> parse_double(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

namespace {

char detect_delimiter(const std::string& line) {
  std::size_t best_count = 0;
  char best = ',';
  for (char cand : {',', '\t', ';'}) {
    std::size_t count = 0;
    for (char c : line)
      if (c == cand) ++count;
    if (count > best_count) {
      best_count = count;
      best = cand;
    }
  }
  return best;
}

std::vector<std::string> split_line(const std::string& line, char delim) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == delim) {
      std::string cell = line.substr(start, i - start);
      if (!cell.empty() && cell.back() == '\r') cell.pop_back();
      out.push_back(std::move(cell));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace

CsvTable read_csv(const std::string& path, char delimiter) {
  std::ifstream in(path);
  if (!in) throw IngestError("cannot open file: " + path);
  CsvTable table;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    if (!have_header) {
      table.delimiter = delimiter != '\0' ? delimiter : detect_delimiter(line);
      table.header = split_line(line, table.delimiter);
      have_header = true;
      continue;
    }
    table.rows.push_back(split_line(line, table.delimiter));
  }
  if (!have_header) throw IngestError("empty file: " + path);
  return table;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write file: " + path);
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out << ',';
    out << header[i];
  }
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << row[i];
    }
    out << '\n';
  }
  if (!out) throw Error("write failed: " + path);
}

}  // namespace softwell::io
