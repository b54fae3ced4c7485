#include "lp/fft.hpp"

#include <fftw3.h>

#include <cstdlib>
#include <map>
#include <mutex>
#include <string>

namespace lp {

namespace {

FftPlanning g_planning = FftPlanning::measure;
bool g_wisdom_loaded = false;

std::string wisdom_path() {
  if (const char* p = std::getenv("LP_WISDOM")) return p;
  return ".lp_wisdom";
}

struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

// One in-place plan pair per transform size. Plans are executed through
// fftw_execute_dft on caller buffers (all 64-byte aligned), which is safe
// and keeps a single algorithm per size for the whole process.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache c;
    return c;
  }

  PlanPair get(int n) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;

    if (!g_wisdom_loaded) {
      fftw_import_wisdom_from_filename(wisdom_path().c_str());
      g_wisdom_loaded = true;
    }
    AlignedVector<cplx> buf(std::size_t(n) * n);
    auto* d = reinterpret_cast<fftw_complex*>(buf.data());
    unsigned rigor =
        g_planning == FftPlanning::measure ? FFTW_MEASURE : FFTW_ESTIMATE;
    PlanPair p;
    p.fwd = fftw_plan_dft_2d(n, n, d, d, FFTW_FORWARD, rigor);
    p.bwd = fftw_plan_dft_2d(n, n, d, d, FFTW_BACKWARD, rigor);
    plans_[n] = p;
    if (g_planning == FftPlanning::measure)
      fftw_export_wisdom_to_filename(wisdom_path().c_str());
    return p;
  }

 private:
  std::mutex mu_;
  std::map<int, PlanPair> plans_;
};

}  // namespace

void set_fft_planning(FftPlanning p) { g_planning = p; }

void fft2d(cplx* data, int n, int sign) {
  PlanPair p = PlanCache::instance().get(n);
  auto* d = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(sign < 0 ? p.fwd : p.bwd, d, d);
}

SpectralField forward(const RealField& f) {
  const TorusGrid& g = f.grid();
  SpectralField F(g, f.ncomp());
  const double w = g.dx() * g.dx();
  for (int c = 0; c < f.ncomp(); ++c) {
    cplx* out = F.comp(c);
    const cplx* in = f.comp(c);
    for (std::size_t i = 0; i < g.size(); ++i) out[i] = in[i];
    fft2d(out, g.n, -1);
    for (std::size_t i = 0; i < g.size(); ++i) out[i] *= w;
  }
  return F;
}

RealField inverse(const SpectralField& F) {
  const TorusGrid& g = F.grid();
  RealField f(g, F.ncomp());
  const double w = 1.0 / (g.period * g.period);
  for (int c = 0; c < F.ncomp(); ++c) {
    cplx* out = f.comp(c);
    const cplx* in = F.comp(c);
    for (std::size_t i = 0; i < g.size(); ++i) out[i] = in[i];
    fft2d(out, g.n, +1);
    for (std::size_t i = 0; i < g.size(); ++i) out[i] *= w;
  }
  return f;
}

}  // namespace lp
