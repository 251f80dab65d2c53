#pragma once

#include <string>
#include <vector>

namespace softwell::detail {

struct SvgSeries {
  std::string label;
  std::vector<double> x, y;
};

/// Minimal quick-look line chart; NaNs break the polyline.
void write_line_chart(const std::string& path, const std::string& title,
                      const std::vector<SvgSeries>& series);

/// Histogram of values with a vertical marker at `observed`.
void write_histogram(const std::string& path, const std::string& title,
                     const std::vector<double>& values, double observed);

}  // namespace softwell::detail
