#pragma once

#include <array>
#include <unordered_map>
#include <vector>

#include "lp/field.hpp"
#include "lp/norms.hpp"

namespace lp {

inline constexpr double kPi = 3.14159265358979323846264338327950288;

enum class BumpVariant { faithful, grid_adapted };

// Parameters of the frequency-localized initial datum: dyadic bump train
// along the rotated ray e = (cos theta, sin theta) plus one small
// off-axis bump near the origin whose first moment against 2 (xi . e_perp)
// is nonzero. theta = 0 puts every bump center on the lattice.
struct CounterexampleSpec {
  double s = 3.0;
  double theta = kPi / 6;
  int k_max = 5;
  BumpVariant variant = BumpVariant::faithful;
  double delta = 1.0 / 16;  // low-bump center offset along e_perp
  double rho = 1.0 / 32;    // low-bump radius

  static CounterexampleSpec faithful(int k_max = 13, double s = 3.0,
                                     double theta = kPi / 6);
  static CounterexampleSpec grid_adapted(int k_max = 5, double s = 3.0,
                                         double theta = kPi / 6);

  std::array<double, 2> e() const { return {std::cos(theta), std::sin(theta)}; }
  std::array<double, 2> e_perp() const {
    return {std::sin(theta), -std::cos(theta)};
  }
  // bump centers: 5 * 2^{j-2} e
  std::array<double, 2> xi_point(int j) const;
  // low-bump center: xi^{-1} + delta * e_perp
  std::array<double, 2> low_center() const;

  void validate() const;
};

struct SparseEntry {
  int m1 = 0, m2 = 0;  // signed lattice indices
  cplx value;
  int tag = 0;  // owning bump: shell index j, or -1 for the low bump
};

// Ball-supported lattice samples; duplicate sites are accumulated.
class SparseSpectrum {
 public:
  SparseSpectrum() = default;
  explicit SparseSpectrum(const TorusGrid& g) : grid_(g) {}

  const TorusGrid& grid() const { return grid_; }
  const std::vector<SparseEntry>& entries() const { return entries_; }

  void add(int m1, int m2, cplx v, int tag);
  cplx value_at(int m1, int m2) const;  // zero off the support

  SpectralField to_field() const;  // dense scalar spectrum

 private:
  TorusGrid grid_;
  std::vector<SparseEntry> entries_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

// a_j-hat = chi(xi - xi^j) sampled on the lattice (empty for j = 0);
// values carry the 31-bit significand quantization described in util.hpp.
SparseSpectrum build_bump(int j, const CounterexampleSpec& spec,
                          const TorusGrid& g);
// low bump: chi((xi - c)/rho), c = xi^{-1} + delta e_perp
SparseSpectrum build_low_bump(const CounterexampleSpec& spec,
                              const TorusGrid& g);
// alpha-hat = sum_j 2^{-j(s+1)} a_j-hat over j in {-1} u [1, k_max]
SparseSpectrum build_alpha(const CounterexampleSpec& spec, const TorusGrid& g);

// u0-hat(xi) = i (-xi_2, xi_1) alpha-hat(xi); divergence-free exactly on
// dyadic-spacing lattices (see util.hpp on quantization).
SpectralField build_u0(const CounterexampleSpec& spec, const TorusGrid& g);

// continuum-side (off-lattice, unquantized) evaluation
double alpha_hat_exact(const CounterexampleSpec& spec, double xi1, double xi2);
std::array<cplx, 2> u0_hat_exact(const CounterexampleSpec& spec, double xi1,
                                 double xi2);
// i * 5 * 2^{-ks-2} (-sin theta, cos theta), the value at the exact bump
// center xi^k
std::array<cplx, 2> u0_hat_closed_form(const CounterexampleSpec& spec, int k);

// --- support analysis ---------------------------------------------------

struct InteractionPair {
  int i = 0, j = 0;   // hat-side and direct-side bump tags
  double margin = 0;  // (r_i + r_j) - |xi^k - ctr_i - ctr_j|, >= 0
};
struct InteractionTable {
  int k = 0;
  std::vector<InteractionPair> pairs;
};
// ordered bump pairs whose Minkowski-sum ball contains xi^k
InteractionTable interaction_table(int k, const CounterexampleSpec& spec);

// --- mechanism constants -------------------------------------------------

// The three reduced overlap integrals for component ell in {1,2}, evaluated
// by midpoint quadrature over their own balls (resolution <= rho/64,
// independent of any global grid). The weight generalizes to
// w(xi) = 2 (xi . e_perp) for theta != pi/6.
struct OverlapIntegrals {
  std::array<double, 2> low_direct{};    // int w(xi) xi_ell a_{-1}(xi)
  std::array<double, 2> shell_pair{};    // int_{B(0,1)} w(eta) eta_ell chi^2
  std::array<double, 2> low_reflected{}; // low_direct - xi^k_ell * moment_j
  double moment_j = 0;                   // J = int w(xi) a_{-1}(xi)
};
OverlapIntegrals overlap_integrals(int k, const CounterexampleSpec& spec);

struct MechanismConstants {
  std::array<cplx, 2> c0{};
  std::array<cplx, 2> c1_standard{};   // standard projector I - e e^T
  std::array<cplx, 2> c1_paper_pair{}; // componentwise pair (1-(e1+e2)e_l)
  double moment_j = 0;
  std::array<double, 2> raw_low{}, raw_pair{};
  struct PerK {
    int k = 0;
    std::array<cplx, 2> drift_reduced{};  // F(P(u0.grad)u0)(xi^k), route A
    std::array<cplx, 2> drift_raw{};      // same, raw-convolution route B
    std::array<cplx, 2> c2_standard{};    // 2^{ks-k} drift - c1
    std::array<cplx, 2> c2_paper_pair{};
    double route_gap = 0;  // relative disagreement of the two routes
  };
  std::vector<PerK> per_k;
};
// Two independent routes per k: (A) the reduced three-region integrals
// assembled with the prefactor and projector, (B) the raw convolution
// integrand summed over the same quadrature lattices. Disagreement beyond
// 1e-8 relative indicates an implementation bug and throws.
MechanismConstants mechanism_constants(const CounterexampleSpec& spec,
                                       int k_lo, int k_hi);

// --- lattice-level oracle for the solver --------------------------------

// F((u0.grad)u0)(xi_target) as the exact lattice convolution of the sparse
// spectrum (same quadrature weight as the padded-FFT product), and its
// Leray projection at the target point.
std::array<cplx, 2> grid_nonlinear_oracle(const SparseSpectrum& alpha,
                                          std::array<int, 2> target);
std::array<cplx, 2> grid_projected_oracle(const SparseSpectrum& alpha,
                                          std::array<int, 2> target);

// --- periodization control ----------------------------------------------

struct PeriodizationRow {
  int n = 0;
  double period = 0, dxi = 0;
  double a3_l1 = 0;        // grid L1 of a_3
  double phi0 = 0;         // grid kernel value at x = 0
  double u0_residual = 0;  // worst rel. gap of u0-hat at nearest lattice
};
struct PeriodizationReport {
  std::vector<PeriodizationRow> rows;
  bool residual_monotone = false;
};
// pre: >= 3 grids with halving dxi, all resolving the spec's band
PeriodizationReport periodization_study(const CounterexampleSpec& spec,
                                        const std::vector<TorusGrid>& grids);

}  // namespace lp
