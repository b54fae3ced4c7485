#pragma once

#include <cmath>
#include <complex>
#include <cstdlib>
#include <new>
#include <string>
#include <vector>

namespace lp {

using cplx = std::complex<double>;

// 64-byte aligned allocator so FFT plans can assume a fixed alignment class
// for every field buffer.
template <class T>
struct AlignedAlloc {
  using value_type = T;
  AlignedAlloc() = default;
  template <class U>
  AlignedAlloc(const AlignedAlloc<U>&) {}
  T* allocate(std::size_t n) {
    void* p = ::operator new[](n * sizeof(T), std::align_val_t(64));
    return static_cast<T*>(p);
  }
  void deallocate(T* p, std::size_t) noexcept {
    ::operator delete[](p, std::align_val_t(64));
  }
  template <class U>
  bool operator==(const AlignedAlloc<U>&) const { return true; }
};

template <class T>
using AlignedVector = std::vector<T, AlignedAlloc<T>>;

// Keep only the leading `bits` bits of the significand (truncation toward
// zero). Products of such a value with two lattice integers |m| <= 2^11 stay
// exact in double precision, which keeps curl-type constructions
// divergence-free to the last bit.
inline double quantize_significand(double v, int bits = 31) {
  if (v == 0.0 || !std::isfinite(v)) return v;
  int e = 0;
  double m = std::frexp(v, &e);
  return std::ldexp(std::trunc(std::ldexp(m, bits)), e - bits);
}

inline cplx quantize_significand(cplx v, int bits = 31) {
  return {quantize_significand(v.real(), bits),
          quantize_significand(v.imag(), bits)};
}

// All numeric file output goes through this: 12 significant digits round-trip
// the quantities we report while staying stable against last-bit noise.
std::string fmt_g12(double v);

// Number of threads used by data-parallel kernels (OpenMP when available).
void set_threads(int n);
int threads();

}  // namespace lp
