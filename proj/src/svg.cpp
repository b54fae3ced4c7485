#include "lp/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace lp {

namespace {

constexpr int kW = 800, kH = 500;
constexpr int kL = 70, kR = 160, kT = 40, kB = 50;  // margins

const char* kPalette[8] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                           "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string num(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%.6g", v);
  return b;
}

std::string escape(const std::string& s) {
  std::string o;
  for (char c : s) {
    if (c == '&') o += "&amp;";
    else if (c == '<') o += "&lt;";
    else if (c == '>') o += "&gt;";
    else o += c;
  }
  return o;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void feed(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (!(hi > lo)) {
      lo -= 1;
      hi += 1;
    } else {
      const double m = 0.05 * (hi - lo);
      lo -= m;
      hi += m;
    }
  }
};

void axes(std::ostringstream& os, const std::string& title,
          const std::string& xlabel, const std::string& ylabel, Range xr,
          Range yr, bool log_y) {
  os << "<rect x='" << kL << "' y='" << kT << "' width='" << (kW - kL - kR)
     << "' height='" << (kH - kT - kB)
     << "' fill='none' stroke='#333' stroke-width='1'/>\n";
  os << "<text x='" << (kW / 2) << "' y='24' text-anchor='middle' "
     << "font-family='monospace' font-size='15'>" << escape(title)
     << "</text>\n";
  os << "<text x='" << (kL + (kW - kL - kR) / 2) << "' y='" << (kH - 12)
     << "' text-anchor='middle' font-family='monospace' font-size='12'>"
     << escape(xlabel) << "</text>\n";
  os << "<text x='18' y='" << (kT + (kH - kT - kB) / 2)
     << "' text-anchor='middle' font-family='monospace' font-size='12' "
     << "transform='rotate(-90 18 " << (kT + (kH - kT - kB) / 2) << ")'>"
     << escape(ylabel) << "</text>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = kL + i * (kW - kL - kR) / 4.0;
    const double vx = xr.lo + i * (xr.hi - xr.lo) / 4.0;
    os << "<text x='" << num(fx) << "' y='" << (kH - kB + 16)
       << "' text-anchor='middle' font-family='monospace' font-size='10'>"
       << num(vx) << "</text>\n";
    const double fy = kH - kB - i * (kH - kT - kB) / 4.0;
    double vy = yr.lo + i * (yr.hi - yr.lo) / 4.0;
    if (log_y) vy = std::pow(10.0, vy);
    os << "<text x='" << (kL - 6) << "' y='" << num(fy + 3)
       << "' text-anchor='end' font-family='monospace' font-size='10'>"
       << num(vy) << "</text>\n";
  }
}

}  // namespace

std::string line_chart_svg(const std::string& title, const std::string& xlabel,
                           const std::string& ylabel,
                           const std::vector<Series>& series, bool log_y) {
  Range xr, yr;
  for (const Series& s : series) {
    if (s.x.size() != s.y.size())
      throw std::invalid_argument("series length mismatch");
    for (double v : s.x) xr.feed(v);
    for (double v : s.y) {
      if (log_y) {
        if (v > 0) yr.feed(std::log10(v));
      } else {
        yr.feed(v);
      }
    }
  }
  xr.pad();
  yr.pad();
  auto mapx = [&](double v) {
    return kL + (v - xr.lo) / (xr.hi - xr.lo) * (kW - kL - kR);
  };
  auto mapy = [&](double v) {
    if (log_y) v = v > 0 ? std::log10(v) : yr.lo;
    return kH - kB - (v - yr.lo) / (yr.hi - yr.lo) * (kH - kT - kB);
  };
  std::ostringstream os;
  os << "<svg xmlns='http://www.w3.org/2000/svg' viewBox='0 0 " << kW << ' '
     << kH << "'>\n<rect width='" << kW << "' height='" << kH
     << "' fill='white'/>\n";
  axes(os, title, xlabel, ylabel, xr, yr, log_y);
  for (std::size_t si = 0; si < series.size(); ++si) {
    const Series& s = series[si];
    const char* color = kPalette[si % 8];
    os << "<polyline fill='none' stroke='" << color
       << "' stroke-width='1.5' points='";
    for (std::size_t i = 0; i < s.x.size(); ++i)
      os << num(mapx(s.x[i])) << ',' << num(mapy(s.y[i])) << ' ';
    os << "'/>\n";
    const double ly = kT + 16.0 + 16.0 * double(si);
    os << "<line x1='" << (kW - kR + 10) << "' y1='" << num(ly - 4) << "' x2='"
       << (kW - kR + 30) << "' y2='" << num(ly - 4) << "' stroke='" << color
       << "' stroke-width='2'/>\n";
    os << "<text x='" << (kW - kR + 36) << "' y='" << num(ly)
       << "' font-family='monospace' font-size='11'>" << escape(s.label)
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string bar_chart_svg(const std::string& title, const std::string& xlabel,
                          const std::string& ylabel,
                          const std::vector<std::string>& labels,
                          const std::vector<double>& values) {
  if (labels.size() != values.size())
    throw std::invalid_argument("labels/values length mismatch");
  Range yr;
  yr.feed(0);
  for (double v : values) yr.feed(v);
  yr.pad();
  std::ostringstream os;
  os << "<svg xmlns='http://www.w3.org/2000/svg' viewBox='0 0 " << kW << ' '
     << kH << "'>\n<rect width='" << kW << "' height='" << kH
     << "' fill='white'/>\n";
  Range xr;
  xr.feed(0);
  xr.feed(double(values.size()));
  axes(os, title, xlabel, ylabel, xr, yr, false);
  const double span = double(kW - kL - kR);
  const double bw = span / double(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double x = kL + bw * double(i) + 0.15 * bw;
    const double y0 = kH - kB - (0 - yr.lo) / (yr.hi - yr.lo) * (kH - kT - kB);
    const double y1 =
        kH - kB - (values[i] - yr.lo) / (yr.hi - yr.lo) * (kH - kT - kB);
    os << "<rect x='" << num(x) << "' y='" << num(std::min(y0, y1))
       << "' width='" << num(0.7 * bw) << "' height='"
       << num(std::abs(y0 - y1)) << "' fill='" << kPalette[i % 8] << "'/>\n";
    os << "<text x='" << num(x + 0.35 * bw) << "' y='" << (kH - kB + 16)
       << "' text-anchor='middle' font-family='monospace' font-size='10'>"
       << escape(labels[i]) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace lp
