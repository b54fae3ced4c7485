#pragma once

#include <complex>

#include "lp/field.hpp"

namespace lp {

// Planner rigor for the FFT backend. Measured plans are faster; to keep
// runs bit-reproducible the chosen plans are cached in a wisdom file
// (LP_WISDOM env var, default .lp_wisdom in the working directory) so every
// run of the same build uses the same algorithm.
enum class FftPlanning { measure, estimate };
void set_fft_planning(FftPlanning p);

// In-place unnormalized 2-D complex transform of an n-by-n row-major array;
// sign -1 is the forward exponent. Buffers must be 64-byte aligned
// (AlignedVector elements are).
void fft2d(cplx* data, int n, int sign);

// Forward transform: F(xi) = dx^2 * sum_x f(x) e^{-i x.xi}; the discrete
// spectrum then matches the continuum Fourier transform of a band-limited,
// domain-contained field.
SpectralField forward(const RealField& f);

// Inverse transform: f(x) = L^{-2} * sum_xi F(xi) e^{+i x.xi}.
RealField inverse(const SpectralField& F);

}  // namespace lp
