#pragma once

#include <cmath>

namespace lp {

// Radial mother cutoff: 1 on |xi| <= 3/4, 0 on |xi| >= 1, C-infinity and
// monotone in between. The transition uses the classical exp(-1/x) bump
// ratio, which is symmetric about r = 7/8 (value exactly 1/2 there).
class MotherCutoff {
 public:
  static constexpr double plateau_radius = 0.75;
  static constexpr double support_radius = 1.0;

  // radial profile psi(r)
  static double psi(double r) {
    if (r <= plateau_radius) return 1.0;
    if (r >= support_radius) return 0.0;
    const double t = 4.0 * r - 3.0;  // t in (0,1)
    const double a = bump(1.0 - t);
    const double b = bump(t);
    return a / (a + b);
  }

  static double chi(double xi1, double xi2) {
    return psi(std::sqrt(xi1 * xi1 + xi2 * xi2));
  }

  // h_j(r) = psi(r * 2^{-j-1}) - psi(r * 2^{-j}); nonnegative since psi is
  // non-increasing. Valid for every integer j (homogeneous family).
  static double shell(int j, double r) {
    return psi(std::ldexp(r, -j - 1)) - psi(std::ldexp(r, -j));
  }

 private:
  static double bump(double x) { return x > 0 ? std::exp(-1.0 / x) : 0.0; }
};

}  // namespace lp
