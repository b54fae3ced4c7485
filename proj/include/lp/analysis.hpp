#pragma once

#include "lp/euler.hpp"

namespace lp {

// Early-time growth of the weighted tracked coefficients
// g_k(t) = 2^{ks} |u_hat(xi~^k, t)|.
struct InflationAnalysis {
  struct PerK {
    int k = 0;
    double g0 = 0;         // g_k(0)
    double sigma = 0;      // |least-squares slope| of g_k over [0, t_fit]
    double prediction = 0; // 2^{ks} |projected drift oracle|, when provided
    double rel_err = 0;    // |sigma - prediction| / prediction
  };
  std::vector<PerK> per_k;
  std::vector<double> ratios;  // sigma_{k+1} / sigma_k
  double t_fit = 0;
  int fit_samples = 0;
};

// predictions may be empty; otherwise one value per tracked k.
InflationAnalysis inflation_analysis(const TraceRecord& trace, double s,
                                     double t_fit,
                                     std::span<const double> predictions = {});

struct ContinuityReport {
  double lipschitz_rate = 0;      // through-origin fit of F^{s-1} diffs vs |dt|
  double lipschitz_residual = 0;  // rms relative residual of that fit
  std::vector<std::pair<double, double>> dyadic;  // (t, F^{s-1/2} diff vs 0)
  bool monotone = false;  // dyadic values decrease as t decreases
};
ContinuityReport continuity_report(const TraceRecord& trace);

// Adjacent-sample jumps of the weak functional at the recorded cadence and
// at twice that cadence (subsampled from the same trace).
struct JumpReport {
  double max_jump_fine = 0;
  double max_jump_coarse = 0;
};
JumpReport weak_jump_report(const TraceRecord& trace);

// One row per k_max for the discontinuity-evidence sweep.
struct DsweepRow {
  int k_max = 0;
  double t_star = 0;
  double d_fs = 0;  // |u(t*) - u(0)|_{F^s}
  int argmax_shell = -2;
};

}  // namespace lp
