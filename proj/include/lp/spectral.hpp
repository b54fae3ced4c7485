#pragma once

#include <array>
#include <utility>

#include "lp/fft.hpp"
#include "lp/field.hpp"

namespace lp {

// d/dx_axis as the frequency multiplier i*xi_axis. axis is 1 or 2.
SpectralField spectral_derivative(const SpectralField& F, int axis);

struct LebesgueNorms {
  double l1 = 0;    // sum |f(x)| dx^2 over the fundamental domain
  double linf = 0;  // max |f(x)|
};

// |f(x)| is the Euclidean magnitude across components (modulus for
// scalars). Summation runs over rows in a fixed order, so results do not
// depend on the thread count.
LebesgueNorms lebesgue_norms(const RealField& f);

// 1/2 * integral |u|^2 dx evaluated from the spectrum (Plancherel).
double spectral_energy(const SpectralField& u);

// 1/2 * integral u.u dx (no conjugation). This bilinear form is the
// quadratic invariant of the flow for complex-valued velocity fields; it
// coincides with the energy when u is real-valued.
cplx bilinear_energy(const SpectralField& u);

// L^2 norm of spatial samples, quadrature-weighted: sqrt(sum |f|^2 dx^2).
double l2_norm(const RealField& f);

// sup over the lattice of |xi . u_hat(xi)| for a 2-component field.
double max_divergence(const SpectralField& u);

// Mean of component c (the xi = 0 coefficient over L^2).
cplx field_mean(const SpectralField& f, int c);

// --- exact-convolution products (2x zero padding) ---------------------

// Embed the spectrum into a 2n lattice of the same dxi (period unchanged,
// Nyquist doubled).
SpectralField pad_spectrum(const SpectralField& F);

// Restrict a 2n-lattice spectrum back to the n lattice.
SpectralField truncate_spectrum(const SpectralField& F, const TorusGrid& to);

// Pointwise product of scalar fields computed on the 2x padded grid, then
// truncated: every retained mode is the exact (linear) convolution value.
SpectralField dealiased_product(const SpectralField& f, const SpectralField& g);

// Workspace that performs many padded products while reusing buffers; the
// simulation hot loop goes through this.
class ProductWorkspace {
 public:
  explicit ProductWorkspace(const TorusGrid& base);

  const TorusGrid& padded_grid() const { return padded_; }

  // inverse transform of the padded spectrum into caller-visible scratch
  // slot k (0..3); returns the spatial samples on the padded grid.
  cplx* to_padded_space(const SpectralField& F, int c, int slot);

  // forward-transform padded spatial samples (in slot) and truncate onto
  // component c of `out`.
  void from_padded_space(int slot, SpectralField& out, int c);

  cplx* slot(int k);

 private:
  TorusGrid base_;
  TorusGrid padded_;
  std::array<AlignedVector<cplx>, 4> slots_;
};

}  // namespace lp
