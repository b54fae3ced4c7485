#include "lp/grid.hpp"

#include <string>

namespace lp {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

TorusGrid make_grid(int n, double period) {
  if (!power_of_two(n))
    throw std::invalid_argument("grid size " + std::to_string(n) +
                                " is not a power of two");
  if (!(period > 0))
    throw std::invalid_argument("grid period must be positive");
  TorusGrid g;
  g.n = n;
  g.period = period;
  g.dxi = kTwoPi / period;
  return g;
}

std::array<int, 2> nearest_lattice(const TorusGrid& g, double xi1, double xi2) {
  const double r = std::sqrt(xi1 * xi1 + xi2 * xi2);
  if (r > g.nyquist())
    throw std::invalid_argument("frequency beyond the Nyquist limit");
  auto round_down_tie = [&](double xi) {
    double t = xi / g.dxi;
    double fl = std::floor(t);
    double frac = t - fl;
    int m;
    if (frac > 0.5)
      m = int(fl) + 1;
    else
      m = int(fl);  // frac == 0.5 resolves toward the smaller index
    if (m < -g.n / 2) m = -g.n / 2;
    if (m > g.n / 2 - 1) m = g.n / 2 - 1;
    return m;
  };
  return {round_down_tie(xi1), round_down_tie(xi2)};
}

}  // namespace lp
