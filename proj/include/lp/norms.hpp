#pragma once

#include <span>
#include <utility>
#include <vector>

#include "lp/filter_bank.hpp"

namespace lp {

// One evaluation of the norm family used throughout: L^1/L^inf,
// Triebel-Lizorkin F^s_{1,inf} (nonhomogeneous and homogeneous), Besov
// B^1_{inf,1} and W^{1,inf}. Homogeneous values are truncated at the
// recorded j range; |.| of a multi-component field is the pointwise
// Euclidean magnitude.
struct NormReport {
  double s = 0;
  double l1 = 0, linf = 0;
  double tl = 0;
  double tl_hom = 0;
  double besov = 0;
  double w1inf = 0;
  double equivalence_ratio = 1;  // (l1 + tl_hom) / tl, 1 for the zero field
  double mean_abs = 0;
  int j_lo = -1, j_hi = 0, j_min_hom = 0;
  int grid_n = 0;
  double grid_period = 0;
  std::vector<std::pair<int, double>> shell_l1;  // per-j  2^{js} L1(Delta_j f)
};

double tl_norm(const SpectralField& f, const FilterBank& fb, double s,
               bool homogeneous = false);

// One block sweep, several weights: returns the nonhomogeneous F^{s}
// norm for every requested s.
std::vector<double> tl_norms_multi(const SpectralField& f,
                                   const FilterBank& fb,
                                   std::span<const double> svals);

double besov_norm(const SpectralField& f, const FilterBank& fb);

double w1inf_norm(const SpectralField& u);

double equivalence_ratio(const SpectralField& f, const FilterBank& fb,
                         double s);

NormReport norm_report(const SpectralField& f, const FilterBank& fb, double s);

// Distribution of the sup-attaining shell: mass[j+1] is the integral of the
// sup-term over the set where shell j attains the pointwise supremum.
struct SupShellHistogram {
  std::vector<double> mass;  // indexed j + 1 for j = -1 .. j_hi
  int argmax_shell = -1;
};
SupShellHistogram sup_shell_histogram(const SpectralField& f,
                                      const FilterBank& fb, double s);

}  // namespace lp
