#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "softwell/errors.hpp"

namespace softwell::detail {

namespace {

constexpr int kWidth = 720;
constexpr int kHeight = 420;
constexpr int kPad = 48;

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                         "#ff7f0e", "#8c564b", "#17becf"};

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void widen() {
    if (!(hi > lo)) {
      lo -= 1.0;
      hi += 1.0;
    }
    const double m = 0.05 * (hi - lo);
    lo -= m;
    hi += m;
  }
  double map(double v, double out_lo, double out_hi) const {
    return out_lo + (v - lo) / (hi - lo) * (out_hi - out_lo);
  }
};

}  // namespace

void write_line_chart(const std::string& path, const std::string& title,
                      const std::vector<SvgSeries>& series) {
  Range rx, ry;
  for (const auto& s : series) {
    for (double v : s.x) rx.add(v);
    for (double v : s.y) ry.add(v);
  }
  rx.widen();
  ry.widen();

  std::ofstream out(path);
  if (!out) throw Error("cannot write file: " + path);
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth
      << "' height='" << kHeight << "'>\n"
      << "<rect width='100%' height='100%' fill='white'/>\n"
      << "<text x='" << kWidth / 2 << "' y='20' text-anchor='middle' "
         "font-family='sans-serif' font-size='14'>" << title << "</text>\n";
  std::size_t ci = 0;
  for (const auto& s : series) {
    const char* color = kColors[ci % 7];
    out << "<path fill='none' stroke='" << color << "' stroke-width='1.2' d='";
    bool pen_down = false;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
        pen_down = false;
        continue;
      }
      const double px = rx.map(s.x[i], kPad, kWidth - kPad);
      const double py = ry.map(s.y[i], kHeight - kPad, kPad);
      out << (pen_down ? 'L' : 'M') << px << ' ' << py << ' ';
      pen_down = true;
    }
    out << "'/>\n";
    out << "<text x='" << kPad + 4 << "' y='" << 36 + 14 * ci
        << "' font-family='sans-serif' font-size='11' fill='" << color << "'>"
        << s.label << "</text>\n";
    ++ci;
  }
  out << "</svg>\n";
}

void write_histogram(const std::string& path, const std::string& title,
                     const std::vector<double>& values, double observed) {
  std::vector<double> finite;
  for (double v : values)
    if (std::isfinite(v)) finite.push_back(v);

  Range rx;
  for (double v : finite) rx.add(v);
  rx.add(observed);
  rx.widen();

  const std::size_t n_bins = 31;
  std::vector<double> counts(n_bins, 0.0);
  for (double v : finite) {
    auto b = static_cast<std::size_t>((v - rx.lo) / (rx.hi - rx.lo) *
                                      static_cast<double>(n_bins));
    counts[std::min(b, n_bins - 1)] += 1.0;
  }
  Range ry;
  ry.add(0.0);
  for (double c : counts) ry.add(c);
  ry.widen();

  std::ofstream out(path);
  if (!out) throw Error("cannot write file: " + path);
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth
      << "' height='" << kHeight << "'>\n"
      << "<rect width='100%' height='100%' fill='white'/>\n"
      << "<text x='" << kWidth / 2 << "' y='20' text-anchor='middle' "
         "font-family='sans-serif' font-size='14'>" << title << "</text>\n";
  const double bw = static_cast<double>(kWidth - 2 * kPad) / n_bins;
  for (std::size_t b = 0; b < n_bins; ++b) {
    const double x = kPad + bw * static_cast<double>(b);
    const double y = ry.map(counts[b], kHeight - kPad, kPad);
    out << "<rect x='" << x << "' y='" << y << "' width='" << bw * 0.9
        << "' height='" << (kHeight - kPad) - y << "' fill='#aaaaaa'/>\n";
  }
  if (std::isfinite(observed)) {
    const double x = rx.map(observed, kPad, kWidth - kPad);
    out << "<line x1='" << x << "' y1='" << kPad << "' x2='" << x << "' y2='"
        << kHeight - kPad << "' stroke='black' stroke-width='1.5'/>\n";
  }
  out << "</svg>\n";
}

}  // namespace softwell::detail
