#include "lp/para.hpp"

#include <cmath>

#include "lp/norms.hpp"

namespace lp {

SpectralField convective(const SpectralField& u, const SpectralField& v,
                         ProductWorkspace& ws) {
  check_same_layout(u, v);
  if (u.ncomp() != 2) throw std::invalid_argument("need 2-component fields");
  const TorusGrid& g = u.grid();
  const std::size_t m = ws.padded_grid().size();
  SpectralField out(g, 2);
  const SpectralField d1 = spectral_derivative(v, 1);
  const SpectralField d2 = spectral_derivative(v, 2);
  cplx* a = ws.to_padded_space(u, 0, 0);  // u1
  cplx* b = ws.to_padded_space(u, 1, 1);  // u2
  for (int c = 0; c < 2; ++c) {
    cplx* p = ws.to_padded_space(d1, c, 2);
    cplx* q = ws.to_padded_space(d2, c, 3);
    for (std::size_t i = 0; i < m; ++i) p[i] = a[i] * p[i] + b[i] * q[i];
    ws.from_padded_space(2, out, c);
  }
  return out;
}

SpectralField convective(const SpectralField& u, const SpectralField& v) {
  ProductWorkspace ws(u.grid());
  return convective(u, v, ws);
}

void leray_in_place(SpectralField& u) {
  if (u.ncomp() != 2) throw std::invalid_argument("need a 2-component field");
  const TorusGrid& g = u.grid();
  cplx* u1 = u.comp(0);
  cplx* u2 = u.comp(1);
  for (int p1 = 0; p1 < g.n; ++p1) {
    const double xi1 = g.freq(p1);
    for (int p2 = 0; p2 < g.n; ++p2) {
      const double xi2 = g.freq(p2);
      const double r2 = xi1 * xi1 + xi2 * xi2;
      if (r2 == 0) continue;  // identity at the origin
      const std::size_t i = g.at(p1, p2);
      const cplx dot = (xi1 * u1[i] + xi2 * u2[i]) / r2;
      u1[i] -= xi1 * dot;
      u2[i] -= xi2 * dot;
    }
  }
}

SpectralField leray(const SpectralField& u) {
  SpectralField out = u;
  leray_in_place(out);
  return out;
}

namespace {

// max |xi . u_hat| and max |xi| |u_hat| in one pass
std::pair<double, double> divergence_scales(const SpectralField& u) {
  const TorusGrid& g = u.grid();
  double worst = 0, scale = 0;
  const cplx* u1 = u.comp(0);
  const cplx* u2 = u.comp(1);
  for (int p1 = 0; p1 < g.n; ++p1) {
    const double xi1 = g.freq(p1);
    for (int p2 = 0; p2 < g.n; ++p2) {
      const double xi2 = g.freq(p2);
      const std::size_t i = g.at(p1, p2);
      const double r = std::sqrt(xi1 * xi1 + xi2 * xi2);
      const double mag =
          std::sqrt(std::norm(u1[i]) + std::norm(u2[i]));
      worst = std::max(worst, std::abs(xi1 * u1[i] + xi2 * u2[i]));
      scale = std::max(scale, r * mag);
    }
  }
  return {worst, scale};
}

}  // namespace

double relative_divergence(const SpectralField& u) {
  auto [worst, scale] = divergence_scales(u);
  return scale > 0 ? worst / scale : 0.0;
}

SpectralField pressure_gradient(const SpectralField& u) {
  auto [worst, scale] = divergence_scales(u);
  if (scale > 0 && worst > 1e-10 * scale)
    throw std::invalid_argument("input is not divergence-free to 1e-10");
  SpectralField w = convective(u, u);
  SpectralField proj = leray(w);
  SpectralField gp = w - proj;  // (I - P)(u.grad)u
  gp.comp(0)[0] = 0;
  gp.comp(1)[0] = 0;
  return gp;
}

BonySplit bony(const SpectralField& f, const SpectralField& g,
               const FilterBank& fb) {
  check_same_layout(f, g);
  if (f.ncomp() != 1)
    throw std::invalid_argument("bony expects scalar fields");
  const TorusGrid& base = f.grid();
  ProductWorkspace ws(base);
  const std::size_t m = ws.padded_grid().size();
  const int jmax = fb.j_max();

  BonySplit out;
  auto accumulate_pairs = [&](auto left_of_j, auto right_of_j) {
    // sum_j left_j * right_j accumulated in padded physical space
    cplx* acc = ws.slot(3);
    for (std::size_t i = 0; i < m; ++i) acc[i] = 0;
    for (int j = -1; j <= jmax; ++j) {
      SpectralField L = left_of_j(j);
      SpectralField R = right_of_j(j);
      bool lz = true, rz = true;
      for (std::size_t i = 0; i < base.size() && (lz || rz); ++i) {
        if (L.comp(0)[i] != cplx(0, 0)) lz = false;
        if (R.comp(0)[i] != cplx(0, 0)) rz = false;
      }
      if (lz || rz) continue;
      cplx* a = ws.to_padded_space(L, 0, 0);
      cplx* b = ws.to_padded_space(R, 0, 1);
      for (std::size_t i = 0; i < m; ++i) acc[i] += a[i] * b[i];
    }
    SpectralField s(base, 1);
    ws.from_padded_space(3, s, 0);
    return s;
  };

  out.low_high = accumulate_pairs(
      [&](int j) { return fb.partial_sum(f, j - 4); },
      [&](int j) { return fb.block(g, j); });
  out.high_low = accumulate_pairs(
      [&](int j) { return fb.partial_sum(g, j - 4); },
      [&](int j) { return fb.block(f, j); });
  out.remainder = accumulate_pairs(
      [&](int j) {
        return fb.partial_sum(f, j + 3) - fb.partial_sum(f, j - 4);
      },
      [&](int j) { return fb.block(g, j); });

  SpectralField fg = dealiased_product(f, g);
  double worst = 0, scale = 0;
  for (std::size_t i = 0; i < base.size(); ++i) {
    const cplx r = out.low_high.comp(0)[i] + out.high_low.comp(0)[i] +
                   out.remainder.comp(0)[i] - fg.comp(0)[i];
    worst = std::max(worst, std::abs(r));
    scale = std::max(scale, std::abs(fg.comp(0)[i]));
  }
  out.identity_residual = scale > 0 ? worst / scale : worst;
  return out;
}

double ls_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("degenerate fit");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= x.size();
  my /= y.size();
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0) throw std::invalid_argument("degenerate fit");
  return sxy / sxx;
}

ShellBoundReport shell_bound_report(const SpectralField& u,
                                    const SpectralField& v,
                                    const FilterBank& fb, double s, int k_lo,
                                    int k_hi) {
  if (k_lo > k_hi || k_hi > fb.j_max())
    throw std::invalid_argument("k range outside the filter bank");
  ShellBoundReport rep;
  rep.u_norm = tl_norm(u, fb, s);
  rep.v_norm = tl_norm(v, fb, s);
  SpectralField w = convective(u, v);
  const double denom = rep.u_norm * rep.v_norm;
  std::vector<double> xs, ys;
  for (int k = k_lo; k <= k_hi; ++k) {
    const double l1 = lebesgue_norms(inverse(fb.block(w, k))).l1;
    rep.k.push_back(k);
    rep.block_l1.push_back(l1);
    if (denom == 0) {
      rep.m_k.push_back(0);
    } else {
      rep.m_k.push_back(std::pow(2.0, k * (s - 1)) * l1 / denom);
      if (l1 > 0) {
        xs.push_back(k);
        ys.push_back(std::log2(l1));
      }
    }
  }
  rep.slope = xs.size() >= 2 ? ls_slope(xs, ys) : 0.0;
  return rep;
}

double product_estimate_ratio(const SpectralField& f, const SpectralField& g,
                              const FilterBank& fb, double s) {
  if (!(s > 0)) throw std::invalid_argument("product estimate needs s > 0");
  const double left = tl_norm(dealiased_product(f, g), fb, s);
  const double right = lebesgue_norms(inverse(f)).linf * tl_norm(g, fb, s) +
                       lebesgue_norms(inverse(g)).linf * tl_norm(f, fb, s);
  if (right == 0) {
    if (left > 0)
      throw std::runtime_error("product estimate violated: zero bound");
    return 0.0;
  }
  return left / right;
}

}  // namespace lp
