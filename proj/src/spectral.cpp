#include "lp/spectral.hpp"

#include <cmath>
#include <vector>

namespace lp {

SpectralField spectral_derivative(const SpectralField& F, int axis) {
  if (axis != 1 && axis != 2) throw std::invalid_argument("axis must be 1 or 2");
  const TorusGrid& g = F.grid();
  SpectralField D(g, F.ncomp());
  for (int c = 0; c < F.ncomp(); ++c) {
    const cplx* in = F.comp(c);
    cplx* out = D.comp(c);
    for (int p1 = 0; p1 < g.n; ++p1) {
      const double xi1 = g.freq(p1);
      for (int p2 = 0; p2 < g.n; ++p2) {
        const double xi = axis == 1 ? xi1 : g.freq(p2);
        const cplx v = in[g.at(p1, p2)];
        out[g.at(p1, p2)] = cplx(-xi * v.imag(), xi * v.real());
      }
    }
  }
  return D;
}

namespace {

// Row-partial reduction: per-row sums are accumulated independently, then
// combined in row order, so the result is independent of the thread count.
template <class PerPoint>
double reduce_rows_sum(const TorusGrid& g, PerPoint f) {
  std::vector<double> row(g.n, 0.0);
#pragma omp parallel for schedule(static)
  for (int p1 = 0; p1 < g.n; ++p1) {
    double s = 0;
    for (int p2 = 0; p2 < g.n; ++p2) s += f(p1, p2);
    row[p1] = s;
  }
  double total = 0;
  for (int p1 = 0; p1 < g.n; ++p1) total += row[p1];
  return total;
}

}  // namespace

LebesgueNorms lebesgue_norms(const RealField& f) {
  const TorusGrid& g = f.grid();
  if (!f.finite()) throw std::invalid_argument("field contains NaN/Inf");
  const int nc = f.ncomp();
  LebesgueNorms out;
  double linf = 0;
  out.l1 = reduce_rows_sum(g, [&](int p1, int p2) {
    double s2 = 0;
    for (int c = 0; c < nc; ++c) s2 += std::norm(f.at(c, p1, p2));
    return std::sqrt(s2);
  });
  out.l1 *= g.dx() * g.dx();
  // max is order-independent
  for (int p1 = 0; p1 < g.n; ++p1)
    for (int p2 = 0; p2 < g.n; ++p2) {
      double s2 = 0;
      for (int c = 0; c < nc; ++c) s2 += std::norm(f.at(c, p1, p2));
      linf = std::max(linf, s2);
    }
  out.linf = std::sqrt(linf);
  return out;
}

double spectral_energy(const SpectralField& u) {
  const TorusGrid& g = u.grid();
  const int nc = u.ncomp();
  double s = reduce_rows_sum(g, [&](int p1, int p2) {
    double v = 0;
    for (int c = 0; c < nc; ++c) v += std::norm(u.at(c, p1, p2));
    return v;
  });
  return 0.5 * s / (g.period * g.period);
}

cplx bilinear_energy(const SpectralField& u) {
  const TorusGrid& g = u.grid();
  const int n = g.n;
  cplx total(0, 0);
  for (int c = 0; c < u.ncomp(); ++c) {
    const cplx* F = u.comp(c);
    for (int p1 = 0; p1 < n; ++p1) {
      const int q1 = p1 == 0 ? 0 : n - p1;
      cplx row(0, 0);
      for (int p2 = 0; p2 < n; ++p2) {
        const int q2 = p2 == 0 ? 0 : n - p2;
        row += F[g.at(p1, p2)] * F[g.at(q1, q2)];
      }
      total += row;
    }
  }
  return 0.5 * total / (g.period * g.period);
}

double l2_norm(const RealField& f) {
  const TorusGrid& g = f.grid();
  const int nc = f.ncomp();
  double s = reduce_rows_sum(g, [&](int p1, int p2) {
    double v = 0;
    for (int c = 0; c < nc; ++c) v += std::norm(f.at(c, p1, p2));
    return v;
  });
  return std::sqrt(s) * g.dx();
}

double max_divergence(const SpectralField& u) {
  if (u.ncomp() != 2) throw std::invalid_argument("need a 2-component field");
  const TorusGrid& g = u.grid();
  double worst = 0;
  const cplx* u1 = u.comp(0);
  const cplx* u2 = u.comp(1);
  for (int p1 = 0; p1 < g.n; ++p1) {
    const double xi1 = g.freq(p1);
    for (int p2 = 0; p2 < g.n; ++p2) {
      const double xi2 = g.freq(p2);
      cplx d = xi1 * u1[g.at(p1, p2)] + xi2 * u2[g.at(p1, p2)];
      worst = std::max(worst, std::abs(d));
    }
  }
  return worst;
}

cplx field_mean(const SpectralField& f, int c) {
  const TorusGrid& g = f.grid();
  return f.comp(c)[0] / (g.period * g.period);
}

SpectralField pad_spectrum(const SpectralField& F) {
  const TorusGrid& g = F.grid();
  TorusGrid big = make_grid(2 * g.n, g.period);
  SpectralField P(big, F.ncomp());
  for (int c = 0; c < F.ncomp(); ++c) {
    const cplx* in = F.comp(c);
    cplx* out = P.comp(c);
    for (int p1 = 0; p1 < g.n; ++p1) {
      int q1 = big.storage_index(g.signed_index(p1));
      for (int p2 = 0; p2 < g.n; ++p2) {
        int q2 = big.storage_index(g.signed_index(p2));
        out[big.at(q1, q2)] = in[g.at(p1, p2)];
      }
    }
  }
  return P;
}

SpectralField truncate_spectrum(const SpectralField& F, const TorusGrid& to) {
  const TorusGrid& g = F.grid();
  if (to.n > g.n || to.period != g.period)
    throw std::invalid_argument("truncation target incompatible");
  SpectralField T(to, F.ncomp());
  for (int c = 0; c < F.ncomp(); ++c) {
    const cplx* in = F.comp(c);
    cplx* out = T.comp(c);
    for (int p1 = 0; p1 < to.n; ++p1) {
      int q1 = g.storage_index(to.signed_index(p1));
      for (int p2 = 0; p2 < to.n; ++p2) {
        int q2 = g.storage_index(to.signed_index(p2));
        out[to.at(p1, p2)] = in[g.at(q1, q2)];
      }
    }
  }
  return T;
}

SpectralField dealiased_product(const SpectralField& f,
                                const SpectralField& g) {
  check_same_layout(f, g);
  if (f.ncomp() != 1)
    throw std::invalid_argument("dealiased_product works on scalar fields");
  ProductWorkspace ws(f.grid());
  cplx* a = ws.to_padded_space(f, 0, 0);
  cplx* b = ws.to_padded_space(g, 0, 1);
  const std::size_t m = ws.padded_grid().size();
  for (std::size_t i = 0; i < m; ++i) a[i] *= b[i];
  SpectralField out(f.grid(), 1);
  ws.from_padded_space(0, out, 0);
  return out;
}

ProductWorkspace::ProductWorkspace(const TorusGrid& base)
    : base_(base), padded_(make_grid(2 * base.n, base.period)) {}

cplx* ProductWorkspace::slot(int k) {
  auto& s = slots_[k];
  if (s.size() != padded_.size()) s.assign(padded_.size(), cplx(0, 0));
  return s.data();
}

cplx* ProductWorkspace::to_padded_space(const SpectralField& F, int c,
                                        int slotno) {
  if (F.grid() != base_) throw std::invalid_argument("grid mismatch");
  cplx* s = slot(slotno);
  const std::size_t m = padded_.size();
  for (std::size_t i = 0; i < m; ++i) s[i] = cplx(0, 0);
  const cplx* in = F.comp(c);
  const int n = base_.n;
  for (int p1 = 0; p1 < n; ++p1) {
    int q1 = padded_.storage_index(base_.signed_index(p1));
    cplx* row = s + std::size_t(q1) * padded_.n;
    for (int p2 = 0; p2 < n; ++p2)
      row[padded_.storage_index(base_.signed_index(p2))] = in[base_.at(p1, p2)];
  }
  fft2d(s, padded_.n, +1);
  const double w = 1.0 / (padded_.period * padded_.period);
  for (std::size_t i = 0; i < m; ++i) s[i] *= w;
  return s;
}

void ProductWorkspace::from_padded_space(int slotno, SpectralField& out,
                                         int c) {
  cplx* s = slot(slotno);
  fft2d(s, padded_.n, -1);
  const double w = padded_.dx() * padded_.dx();
  cplx* o = out.comp(c);
  const int n = base_.n;
  for (int p1 = 0; p1 < n; ++p1) {
    int q1 = padded_.storage_index(base_.signed_index(p1));
    const cplx* row = s + std::size_t(q1) * padded_.n;
    for (int p2 = 0; p2 < n; ++p2)
      o[base_.at(p1, p2)] =
          w * row[padded_.storage_index(base_.signed_index(p2))];
  }
}

}  // namespace lp
