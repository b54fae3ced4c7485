#pragma once

#include <map>
#include <memory>
#include <vector>

#include "lp/cutoff.hpp"
#include "lp/fft.hpp"
#include "lp/field.hpp"

namespace lp {

struct ShellDecomposition {
  int j_lo = -1;
  std::vector<SpectralField> blocks;  // Delta_j f for j = j_lo .. j_lo+blocks-1
  SpectralField residual;             // f - sum of blocks
  double residual_linf = 0;           // spatial sup of the residual
  double source_linf = 0;
};

// Dyadic frequency filters over one grid: block operators Delta_j (and the
// homogeneous family), partial sums S_k, and the kernels Phi, phi_j.
// Multipliers are sampled once per (grid, j) and cached; instances are
// immutable after construction and safe for concurrent reads of the cache
// they have already built (tests and the solver build the cache up front
// via warm_cache).
class FilterBank {
 public:
  FilterBank(const TorusGrid& g, int j_max);

  const TorusGrid& grid() const { return grid_; }
  int j_max() const { return j_max_; }
  // Homogeneous truncation: shells below this hold no lattice point other
  // than xi = 0. Reported alongside every homogeneous norm.
  int j_min_homogeneous() const { return j_min_hom_; }

  // sampled multiplier of Delta_j over the lattice (j = -1 means chi)
  const std::vector<double>& multiplier(int j) const;
  void warm_cache() const;

  // Delta_j: j <= -2 gives the zero field; j = -1 applies chi.
  SpectralField block(const SpectralField& f, int j) const;
  // homogeneous Delta_j for any j with 2^j >= dxi/2
  SpectralField block_homogeneous(const SpectralField& f, int j) const;
  // S_k with the telescoped closed-form symbol chi(2^{-k-1} xi); k <= -2
  // gives zero.
  SpectralField partial_sum(const SpectralField& f, int k) const;

  ShellDecomposition decompose(const SpectralField& f, int j_max) const;

  // kernels on the grid: phi_j = F^{-1}(h_j), Phi = F^{-1}(chi) (j = -1)
  RealField kernel(int j) const;

  // scalar symbols at radius r
  static double shell_symbol(int j, double r) { return MotherCutoff::shell(j, r); }
  static double lowpass_symbol(int k, double r) {
    return MotherCutoff::psi(std::ldexp(r, -k - 1));
  }

 private:
  TorusGrid grid_;
  int j_max_;
  int j_min_hom_;
  mutable std::map<int, std::vector<double>> cache_;

  std::vector<double> sample_shell(int j) const;
  SpectralField apply(const SpectralField& f, const std::vector<double>& m) const;
};

// Smallest j_max whose cumulative low-pass covers the whole lattice
// (including corners).
int default_j_max(const TorusGrid& g);

}  // namespace lp
