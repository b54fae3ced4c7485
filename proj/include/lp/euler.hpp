#pragma once

#include <array>
#include <map>
#include <vector>

#include "lp/filter_bank.hpp"
#include "lp/norms.hpp"
#include "lp/para.hpp"

namespace lp {

// ell^1 weight sequence k_j, j = -1 .. j_max (stored at index j+1)
struct WeakSequenceSpec {
  std::vector<double> weights;
  double ell1() const;
  double at(int j) const { return weights[std::size_t(j + 1)]; }
  int j_max() const { return int(weights.size()) - 2; }
  // default: k_{-1} = 1, k_j = 2^{-j}
  static WeakSequenceSpec geometric(int j_max);
};

// N(v) = L1 norm of sum_j 2^{js} k_j Delta_j v, evaluated through one
// combined multiplier (two transforms per call). The mollified variant
// first applies sum_i 2^{-eps i} Delta_i.
class WeakFunctional {
 public:
  WeakFunctional(const FilterBank& fb, WeakSequenceSpec seq, double s);
  double operator()(const SpectralField& v) const;
  double mollified(const SpectralField& v, double eps) const;

 private:
  const FilterBank& fb_;
  WeakSequenceSpec seq_;
  double s_;
  std::vector<double> base_;  // combined multiplier
  mutable std::map<double, std::vector<double>> mollifier_;
  double apply(const SpectralField& v, const std::vector<double>& m) const;
};

// u_eps = sum_j 2^{-eps j} Delta_j u
SpectralField mollified_field(const SpectralField& u, const FilterBank& fb,
                              double eps);

// F^{s-eps} norm of u - S_ell u for each requested ell
std::vector<double> partial_sum_residuals(const SpectralField& u,
                                          const FilterBank& fb, double s,
                                          double eps,
                                          std::span<const int> ells);

struct RhsResult {
  SpectralField f;
  double max_speed = 0;  // sup |u| seen on the padded grid
};

// -P((u.grad)u) with exact-convolution dealiasing and zero mean. The
// convective term is evaluated in rotational form (vorticity x velocity);
// after projection this equals the convective form identically, and costs
// five padded transforms instead of eight.
RhsResult euler_rhs(const SpectralField& u, ProductWorkspace& ws);

// classical RK4 step; throws when dt * max|u| * max|xi| exceeds the
// advective stability limit or the state stops being finite.
void rk4_step(SpectralField& u, double dt, ProductWorkspace& ws,
              double stability_limit = 0.5);

struct SimulationConfig {
  TorusGrid grid;
  double dt = 0;
  int steps = 0;
  int sample_every = 1;
  double s = 3.0;
  std::vector<int> tracked_k;                     // labels
  std::vector<std::array<int, 2>> tracked_points; // lattice indices
  std::vector<double> epsilons = {0.4, 0.2, 0.1};
  WeakSequenceSpec weak;
  int j_max = -1;  // filter-bank range; default from the grid
  std::vector<int> snapshot_steps;
  double stability_limit = 0.5;
  bool keep_final_state = false;
};

struct TraceRow {
  double t = 0;
  std::vector<cplx> uhat1, uhat2;  // tracked coefficients per component
  double energy = 0;          // hermitian 1/2 int |u|^2 (not an invariant
                              // of the flow for complex-valued data)
  double quad_invariant = 0;  // |1/2 int u.u|, the conserved quadratic
  double mean_abs = 0, div_rel = 0;
  double weak_n = 0;
  std::vector<double> weak_n_mollified;
};

struct DiffNormRow {
  double t1 = 0, t2 = 0;
  double f_s = 0, f_s_half = 0, f_s_one = 0;  // F^s, F^{s-1/2}, F^{s-1}
  int argmax_shell = -2;  // sup-attaining shell of the difference (t2 vs t1=0 rows only)
};

struct TraceRecord {
  SimulationConfig config;
  std::vector<TraceRow> rows;
  std::vector<DiffNormRow> diffs;
  double energy0 = 0;
  double quad_invariant0 = 0;
  double w1inf0 = 0;
  SpectralField final_state;  // populated when keep_final_state
};

TraceRecord simulate(const SimulationConfig& cfg, const SpectralField& u0);

}  // namespace lp
