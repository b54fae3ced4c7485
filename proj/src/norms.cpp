#include "lp/norms.hpp"

#include <cmath>

#include "lp/spectral.hpp"

namespace lp {

namespace {

// Streams |Delta_j f|(x) for j = -1 .. fb.j_max() without materializing all
// blocks: one spectral multiply + inverse transform per (j, component).
// visit(j, mag) receives the pointwise magnitude samples of block j.
template <class Visit>
void stream_block_magnitudes(const SpectralField& f, const FilterBank& fb,
                             Visit visit) {
  const TorusGrid& g = f.grid();
  const int nc = f.ncomp();
  std::vector<double> mag(g.size());
  AlignedVector<cplx> scratch(g.size());
  for (int j = -1; j <= fb.j_max(); ++j) {
    const std::vector<double>& m = fb.multiplier(j);
    for (std::size_t i = 0; i < g.size(); ++i) mag[i] = 0;
    for (int c = 0; c < nc; ++c) {
      const cplx* in = f.comp(c);
      for (std::size_t i = 0; i < g.size(); ++i) scratch[i] = m[i] * in[i];
      fft2d(scratch.data(), g.n, +1);
      const double w = 1.0 / (g.period * g.period);
      for (std::size_t i = 0; i < g.size(); ++i)
        mag[i] += std::norm(w * scratch[i]);
    }
    for (std::size_t i = 0; i < g.size(); ++i) mag[i] = std::sqrt(mag[i]);
    visit(j, mag);
  }
}

double weighted_l1(const TorusGrid& g, const std::vector<double>& v) {
  // fixed row order keeps the reduction thread-count independent
  double total = 0;
  for (int p1 = 0; p1 < g.n; ++p1) {
    double row = 0;
    const double* r = v.data() + std::size_t(p1) * g.n;
    for (int p2 = 0; p2 < g.n; ++p2) row += r[p2];
    total += row;
  }
  return total * g.dx() * g.dx();
}

}  // namespace

std::vector<double> tl_norms_multi(const SpectralField& f,
                                   const FilterBank& fb,
                                   std::span<const double> svals) {
  if (!f.finite()) throw std::invalid_argument("field contains NaN/Inf");
  const TorusGrid& g = f.grid();
  std::vector<std::vector<double>> runmax(
      svals.size(), std::vector<double>(g.size(), 0.0));
  stream_block_magnitudes(f, fb, [&](int j, const std::vector<double>& mag) {
    for (std::size_t si = 0; si < svals.size(); ++si) {
      const double w = std::pow(2.0, j * svals[si]);
      std::vector<double>& rm = runmax[si];
      for (std::size_t i = 0; i < mag.size(); ++i)
        rm[i] = std::max(rm[i], w * mag[i]);
    }
  });
  std::vector<double> out(svals.size());
  for (std::size_t si = 0; si < svals.size(); ++si)
    out[si] = weighted_l1(g, runmax[si]);
  return out;
}

double tl_norm(const SpectralField& f, const FilterBank& fb, double s,
               bool homogeneous) {
  if (!homogeneous) {
    double sv[1] = {s};
    return tl_norms_multi(f, fb, sv)[0];
  }
  if (!f.finite()) throw std::invalid_argument("field contains NaN/Inf");
  const TorusGrid& g = f.grid();
  const int nc = f.ncomp();
  std::vector<double> runmax(g.size(), 0.0);
  std::vector<double> mag(g.size());
  AlignedVector<cplx> scratch(g.size());
  for (int j = fb.j_min_homogeneous(); j <= fb.j_max(); ++j) {
    SpectralField b = fb.block_homogeneous(f, j);
    for (std::size_t i = 0; i < g.size(); ++i) mag[i] = 0;
    for (int c = 0; c < nc; ++c) {
      for (std::size_t i = 0; i < g.size(); ++i) scratch[i] = b.comp(c)[i];
      fft2d(scratch.data(), g.n, +1);
      const double w = 1.0 / (g.period * g.period);
      for (std::size_t i = 0; i < g.size(); ++i)
        mag[i] += std::norm(w * scratch[i]);
    }
    const double w = std::pow(2.0, j * s);
    for (std::size_t i = 0; i < g.size(); ++i)
      runmax[i] = std::max(runmax[i], w * std::sqrt(mag[i]));
  }
  return weighted_l1(g, runmax);
}

double besov_norm(const SpectralField& f, const FilterBank& fb) {
  if (!f.finite()) throw std::invalid_argument("field contains NaN/Inf");
  double total = 0;
  stream_block_magnitudes(f, fb, [&](int j, const std::vector<double>& mag) {
    double linf = 0;
    for (double v : mag) linf = std::max(linf, v);
    total += std::ldexp(linf, j);
  });
  return total;
}

double w1inf_norm(const SpectralField& u) {
  RealField s = inverse(u);
  double m0 = lebesgue_norms(s).linf;
  const TorusGrid& g = u.grid();
  std::vector<double> grad2(g.size(), 0.0);
  for (int axis = 1; axis <= 2; ++axis) {
    RealField d = inverse(spectral_derivative(u, axis));
    for (int c = 0; c < u.ncomp(); ++c) {
      const cplx* v = d.comp(c);
      for (std::size_t i = 0; i < g.size(); ++i) grad2[i] += std::norm(v[i]);
    }
  }
  double m1 = 0;
  for (double v : grad2) m1 = std::max(m1, v);
  return m0 + std::sqrt(m1);
}

double equivalence_ratio(const SpectralField& f, const FilterBank& fb,
                         double s) {
  if (!(s > 0)) throw std::invalid_argument("equivalence needs s > 0");
  const double nonhom = tl_norm(f, fb, s, false);
  if (nonhom == 0) return 1.0;
  const double l1 = lebesgue_norms(inverse(f)).l1;
  const double hom = tl_norm(f, fb, s, true);
  return (l1 + hom) / nonhom;
}

NormReport norm_report(const SpectralField& f, const FilterBank& fb,
                       double s) {
  NormReport r;
  r.s = s;
  const TorusGrid& g = f.grid();
  r.grid_n = g.n;
  r.grid_period = g.period;
  r.j_lo = -1;
  r.j_hi = fb.j_max();
  r.j_min_hom = fb.j_min_homogeneous();
  LebesgueNorms ln = lebesgue_norms(inverse(f));
  r.l1 = ln.l1;
  r.linf = ln.linf;
  double ma = 0;
  for (int c = 0; c < f.ncomp(); ++c) ma += std::norm(field_mean(f, c));
  r.mean_abs = std::sqrt(ma);

  // one sweep: running sup for tl, per-shell L1 and Linf
  std::vector<double> runmax(g.size(), 0.0);
  double besov = 0;
  stream_block_magnitudes(f, fb, [&](int j, const std::vector<double>& mag) {
    const double w = std::pow(2.0, j * s);
    for (std::size_t i = 0; i < mag.size(); ++i)
      runmax[i] = std::max(runmax[i], w * mag[i]);
    double linf = 0, l1 = 0;
    for (int p1 = 0; p1 < g.n; ++p1) {
      double row = 0;
      const double* rr = mag.data() + std::size_t(p1) * g.n;
      for (int p2 = 0; p2 < g.n; ++p2) {
        row += rr[p2];
        linf = std::max(linf, rr[p2]);
      }
      l1 += row;
    }
    besov += std::ldexp(linf, j);
    r.shell_l1.emplace_back(j, w * l1 * g.dx() * g.dx());
  });
  r.tl = weighted_l1(g, runmax);
  r.besov = besov;
  r.tl_hom = tl_norm(f, fb, s, true);
  r.w1inf = f.ncomp() == 2 ? w1inf_norm(f) : 0.0;
  r.equivalence_ratio = r.tl == 0 ? 1.0 : (r.l1 + r.tl_hom) / r.tl;
  return r;
}

SupShellHistogram sup_shell_histogram(const SpectralField& f,
                                      const FilterBank& fb, double s) {
  const TorusGrid& g = f.grid();
  std::vector<double> runmax(g.size(), 0.0);
  std::vector<int> arg(g.size(), -1);
  stream_block_magnitudes(f, fb, [&](int j, const std::vector<double>& mag) {
    const double w = std::pow(2.0, j * s);
    for (std::size_t i = 0; i < mag.size(); ++i) {
      const double v = w * mag[i];
      if (v > runmax[i]) {
        runmax[i] = v;
        arg[i] = j;
      }
    }
  });
  SupShellHistogram h;
  h.mass.assign(fb.j_max() + 2, 0.0);
  for (std::size_t i = 0; i < runmax.size(); ++i)
    if (arg[i] >= -1 && runmax[i] > 0) h.mass[arg[i] + 1] += runmax[i];
  const double w = g.dx() * g.dx();
  double best = -1;
  for (std::size_t k = 0; k < h.mass.size(); ++k) {
    h.mass[k] *= w;
    if (h.mass[k] > best) {
      best = h.mass[k];
      h.argmax_shell = int(k) - 1;
    }
  }
  return h;
}

}  // namespace lp
