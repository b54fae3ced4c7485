#pragma once

#include <span>
#include <vector>

#include "lp/filter_bank.hpp"
#include "lp/spectral.hpp"

namespace lp {

// (u . grad) v for 2-component fields, computed with exact-convolution
// (2x padded) products.
SpectralField convective(const SpectralField& u, const SpectralField& v);
SpectralField convective(const SpectralField& u, const SpectralField& v,
                         ProductWorkspace& ws);

// Leray projection: multiplier I - xi xi^T / |xi|^2, identity at xi = 0.
SpectralField leray(const SpectralField& u);
void leray_in_place(SpectralField& u);

// grad p with p = (-Delta)^{-1} div((u.grad)u); requires u divergence-free
// to 1e-10 (relative to max |xi||u_hat|).
SpectralField pressure_gradient(const SpectralField& u);

// max |xi . u_hat| over max |xi| |u_hat|
double relative_divergence(const SpectralField& u);

struct BonySplit {
  SpectralField low_high;   // T_f g = sum_j S_{j-4} f  Delta_j g
  SpectralField high_low;   // T_g f
  SpectralField remainder;  // R(f,g) = sum_{|i-j|<=3} Delta_i f Delta_j g
  // max spectral residual of (T_f g + T_g f + R - fg) over max |fg_hat|
  double identity_residual = 0;
};
BonySplit bony(const SpectralField& f, const SpectralField& g,
               const FilterBank& fb);

struct ShellBoundReport {
  std::vector<int> k;
  std::vector<double> block_l1;  // L1 of Delta_k (u.grad)v
  std::vector<double> m_k;       // 2^{k(s-1)} block_l1 / (|u| |v|)
  double slope = 0;              // least-squares slope of log2(block_l1) vs k
  double u_norm = 0, v_norm = 0;
};
ShellBoundReport shell_bound_report(const SpectralField& u,
                                    const SpectralField& v,
                                    const FilterBank& fb, double s, int k_lo,
                                    int k_hi);

// ratio of |fg|_{F^s} to |f|_inf |g|_{F^s} + |g|_inf |f|_{F^s}
double product_estimate_ratio(const SpectralField& f, const SpectralField& g,
                              const FilterBank& fb, double s);

// least-squares slope helper (shared with the analysis module)
double ls_slope(std::span<const double> x, std::span<const double> y);

}  // namespace lp
