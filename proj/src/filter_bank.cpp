#include "lp/filter_bank.hpp"

#include <cmath>
#include <stdexcept>

#include "lp/spectral.hpp"

namespace lp {

FilterBank::FilterBank(const TorusGrid& g, int j_max)
    : grid_(g), j_max_(j_max) {
  if (j_max < -1) throw std::invalid_argument("j_max must be >= -1");
  j_min_hom_ = int(std::ceil(std::log2(g.dxi))) - 1;
}

int default_j_max(const TorusGrid& g) {
  const double corner = g.nyquist() * std::sqrt(2.0);
  int j = 0;
  while (0.75 * std::ldexp(1.0, j + 1) < corner) ++j;
  return j;
}

std::vector<double> FilterBank::sample_shell(int j) const {
  std::vector<double> m(grid_.size());
  const int n = grid_.n;
#pragma omp parallel for schedule(static)
  for (int p1 = 0; p1 < n; ++p1) {
    const double xi1 = grid_.freq(p1);
    for (int p2 = 0; p2 < n; ++p2) {
      const double xi2 = grid_.freq(p2);
      const double r = std::sqrt(xi1 * xi1 + xi2 * xi2);
      m[grid_.at(p1, p2)] =
          j == -1 ? MotherCutoff::psi(r) : MotherCutoff::shell(j, r);
    }
  }
  return m;
}

const std::vector<double>& FilterBank::multiplier(int j) const {
  auto it = cache_.find(j);
  if (it == cache_.end()) it = cache_.emplace(j, sample_shell(j)).first;
  return it->second;
}

void FilterBank::warm_cache() const {
  for (int j = -1; j <= j_max_; ++j) multiplier(j);
}

SpectralField FilterBank::apply(const SpectralField& f,
                                const std::vector<double>& m) const {
  SpectralField out(grid_, f.ncomp());
  for (int c = 0; c < f.ncomp(); ++c) {
    const cplx* in = f.comp(c);
    cplx* o = out.comp(c);
    for (std::size_t i = 0; i < grid_.size(); ++i) o[i] = m[i] * in[i];
  }
  return out;
}

SpectralField FilterBank::block(const SpectralField& f, int j) const {
  if (f.grid() != grid_) throw std::invalid_argument("grid mismatch");
  if (j <= -2) return SpectralField(grid_, f.ncomp());
  return apply(f, multiplier(j));
}

SpectralField FilterBank::block_homogeneous(const SpectralField& f,
                                            int j) const {
  if (f.grid() != grid_) throw std::invalid_argument("grid mismatch");
  if (j < j_min_hom_)
    throw std::invalid_argument(
        "homogeneous shell below the lattice resolution");
  if (j >= 0) return block(f, j);
  SpectralField out(grid_, f.ncomp());
  const int n = grid_.n;
  for (int c = 0; c < f.ncomp(); ++c) {
    const cplx* in = f.comp(c);
    cplx* o = out.comp(c);
    for (int p1 = 0; p1 < n; ++p1) {
      const double xi1 = grid_.freq(p1);
      for (int p2 = 0; p2 < n; ++p2) {
        const double xi2 = grid_.freq(p2);
        const double r = std::sqrt(xi1 * xi1 + xi2 * xi2);
        o[grid_.at(p1, p2)] = MotherCutoff::shell(j, r) * in[grid_.at(p1, p2)];
      }
    }
  }
  return out;
}

SpectralField FilterBank::partial_sum(const SpectralField& f, int k) const {
  if (f.grid() != grid_) throw std::invalid_argument("grid mismatch");
  SpectralField out(grid_, f.ncomp());
  if (k <= -2) return out;
  const int n = grid_.n;
  for (int c = 0; c < f.ncomp(); ++c) {
    const cplx* in = f.comp(c);
    cplx* o = out.comp(c);
    for (int p1 = 0; p1 < n; ++p1) {
      const double xi1 = grid_.freq(p1);
      for (int p2 = 0; p2 < n; ++p2) {
        const double xi2 = grid_.freq(p2);
        const double r = std::sqrt(xi1 * xi1 + xi2 * xi2);
        o[grid_.at(p1, p2)] = lowpass_symbol(k, r) * in[grid_.at(p1, p2)];
      }
    }
  }
  return out;
}

ShellDecomposition FilterBank::decompose(const SpectralField& f,
                                         int j_hi) const {
  if (f.grid() != grid_) throw std::invalid_argument("grid mismatch");
  if (std::ldexp(1.0, j_hi) > 2.0 * grid_.nyquist())
    throw std::invalid_argument("decomposition range beyond the lattice");
  ShellDecomposition d;
  d.j_lo = -1;
  SpectralField sum(grid_, f.ncomp());
  for (int j = -1; j <= j_hi; ++j) {
    d.blocks.push_back(block(f, j));
    const cplx* b = d.blocks.back().raw().data();
    cplx* s = sum.raw().data();
    for (std::size_t i = 0; i < sum.raw().size(); ++i) s[i] += b[i];
  }
  d.residual = f - sum;
  d.residual_linf = lebesgue_norms(inverse(d.residual)).linf;
  d.source_linf = lebesgue_norms(inverse(f)).linf;
  return d;
}

RealField FilterBank::kernel(int j) const {
  SpectralField sym(grid_, 1);
  const std::vector<double>& m = multiplier(j);
  cplx* o = sym.comp(0);
  for (std::size_t i = 0; i < grid_.size(); ++i) o[i] = m[i];
  return inverse(sym);
}

}  // namespace lp
