#include "lp/field.hpp"

#include <cmath>

namespace lp {

namespace detail {

bool FieldData::finite() const {
  for (const cplx& v : data_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

}  // namespace detail

double SpectralField::hermitian_defect() const {
  const int n = grid_.n;
  double worst = 0, scale = 0;
  for (int c = 0; c < ncomp_; ++c) {
    const cplx* F = comp(c);
    for (int p1 = 0; p1 < n; ++p1) {
      int q1 = p1 == 0 ? 0 : n - p1;
      for (int p2 = 0; p2 < n; ++p2) {
        int q2 = p2 == 0 ? 0 : n - p2;
        cplx a = F[grid_.at(p1, p2)];
        cplx b = std::conj(F[grid_.at(q1, q2)]);
        worst = std::max(worst, std::abs(a - b));
        scale = std::max(scale, std::abs(a));
      }
    }
  }
  return scale > 0 ? worst / scale : 0.0;
}

void check_same_layout(const detail::FieldData& a,
                       const detail::FieldData& b) {
  if (a.grid() != b.grid()) throw std::invalid_argument("grid mismatch");
  if (a.ncomp() != b.ncomp())
    throw std::invalid_argument("component count mismatch");
}

SpectralField operator+(const SpectralField& a, const SpectralField& b) {
  check_same_layout(a, b);
  SpectralField r = a;
  const cplx* pb = b.raw().data();
  cplx* pr = r.raw().data();
  for (std::size_t i = 0; i < r.raw().size(); ++i) pr[i] += pb[i];
  return r;
}

SpectralField operator-(const SpectralField& a, const SpectralField& b) {
  check_same_layout(a, b);
  SpectralField r = a;
  const cplx* pb = b.raw().data();
  cplx* pr = r.raw().data();
  for (std::size_t i = 0; i < r.raw().size(); ++i) pr[i] -= pb[i];
  return r;
}

SpectralField operator*(double s, const SpectralField& a) {
  SpectralField r = a;
  for (cplx& v : r.raw()) v *= s;
  return r;
}

void axpy(cplx a, const SpectralField& x, SpectralField& y) {
  check_same_layout(x, y);
  const cplx* px = x.raw().data();
  cplx* py = y.raw().data();
  for (std::size_t i = 0; i < y.raw().size(); ++i) py[i] += a * px[i];
}

}  // namespace lp
