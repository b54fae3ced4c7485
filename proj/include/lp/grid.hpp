#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace lp {

// Square frequency lattice of a torus with fundamental domain
// [-L/2, L/2)^2. Lattice frequencies are xi = dxi * m for integer
// m in [-n/2, n/2); both spatial samples and spectral coefficients are
// stored in FFT order (m = 0, 1, ..., n/2-1, -n/2, ..., -1 per axis),
// row-major with axis 1 outermost.
struct TorusGrid {
  int n = 0;         // points per axis (power of two)
  double period = 0; // L
  double dxi = 0;    // frequency spacing 2*pi/L

  std::size_t size() const { return std::size_t(n) * n; }
  double dx() const { return period / n; }
  double nyquist() const { return 0.5 * n * dxi; }

  // storage index p in [0,n) <-> signed lattice index m in [-n/2, n/2)
  int signed_index(int p) const { return p < n / 2 ? p : p - n; }
  int storage_index(int m) const { return m >= 0 ? m : m + n; }

  double freq(int p) const { return dxi * signed_index(p); }
  double coord(int p) const { return dx() * signed_index(p); }

  std::size_t at(int p1, int p2) const { return std::size_t(p1) * n + p2; }

  bool operator==(const TorusGrid& o) const {
    return n == o.n && period == o.period;
  }
  bool operator!=(const TorusGrid& o) const { return !(*this == o); }
};

// n must be a power of two, period positive. dxi * period = 2*pi up to
// a final rounding.
TorusGrid make_grid(int n, double period);

// Nearest lattice point to an arbitrary frequency; ties broken toward the
// smaller signed index, axis 1 first. Throws if |xi| exceeds the Nyquist
// frequency.
std::array<int, 2> nearest_lattice(const TorusGrid& g, double xi1, double xi2);

}  // namespace lp
