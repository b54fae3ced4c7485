#pragma once

#include <string>
#include <vector>

namespace lp {

// Deterministic static charts: fixed viewBox, no timestamps, coordinates
// printed with fixed precision, so identical inputs give identical bytes.
struct Series {
  std::string label;
  std::vector<double> x, y;
};

std::string line_chart_svg(const std::string& title, const std::string& xlabel,
                           const std::string& ylabel,
                           const std::vector<Series>& series,
                           bool log_y = false);

std::string bar_chart_svg(const std::string& title, const std::string& xlabel,
                          const std::string& ylabel,
                          const std::vector<std::string>& labels,
                          const std::vector<double>& values);

}  // namespace lp
