#pragma once

#include <complex>
#include <stdexcept>

#include "lp/grid.hpp"
#include "lp/util.hpp"

namespace lp {

namespace detail {

// Common storage for spectral and physical samples: ncomp dense complex
// arrays over the grid, component-major.
class FieldData {
 public:
  FieldData() = default;
  FieldData(const TorusGrid& g, int ncomp)
      : grid_(g), ncomp_(ncomp), data_(g.size() * ncomp, cplx(0.0, 0.0)) {
    if (ncomp < 1) throw std::invalid_argument("field needs >= 1 component");
  }

  const TorusGrid& grid() const { return grid_; }
  int ncomp() const { return ncomp_; }
  std::size_t size() const { return grid_.size(); }

  cplx* comp(int c) { return data_.data() + std::size_t(c) * grid_.size(); }
  const cplx* comp(int c) const {
    return data_.data() + std::size_t(c) * grid_.size();
  }

  cplx& at(int c, int p1, int p2) { return comp(c)[grid_.at(p1, p2)]; }
  const cplx& at(int c, int p1, int p2) const {
    return comp(c)[grid_.at(p1, p2)];
  }

  AlignedVector<cplx>& raw() { return data_; }
  const AlignedVector<cplx>& raw() const { return data_; }

  bool finite() const;

 protected:
  TorusGrid grid_;
  int ncomp_ = 0;
  AlignedVector<cplx> data_;
};

}  // namespace detail

// Dense Fourier coefficients over the frequency lattice, FFT order.
class SpectralField : public detail::FieldData {
 public:
  SpectralField() = default;
  SpectralField(const TorusGrid& g, int ncomp) : FieldData(g, ncomp) {}

  // max over lattice of |conj(F(-xi)) - F(xi)| relative to max |F|;
  // zero for spectra of real-valued fields.
  double hermitian_defect() const;
};

// Point values at x = dx * m over the fundamental domain, FFT order.
class RealField : public detail::FieldData {
 public:
  RealField() = default;
  RealField(const TorusGrid& g, int ncomp) : FieldData(g, ncomp) {}
};

// Elementwise helpers (grids and component counts must match).
void check_same_layout(const detail::FieldData& a, const detail::FieldData& b);

SpectralField operator+(const SpectralField& a, const SpectralField& b);
SpectralField operator-(const SpectralField& a, const SpectralField& b);
SpectralField operator*(double s, const SpectralField& a);
void axpy(cplx a, const SpectralField& x, SpectralField& y);  // y += a*x

}  // namespace lp
