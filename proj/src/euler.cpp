#include "lp/euler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lp/spectral.hpp"

namespace lp {

double WeakSequenceSpec::ell1() const {
  double s = 0;
  for (double w : weights) s += std::abs(w);
  return s;
}

WeakSequenceSpec WeakSequenceSpec::geometric(int j_max) {
  WeakSequenceSpec w;
  w.weights.resize(std::size_t(j_max + 2));
  w.weights[0] = 1.0;  // j = -1
  for (int j = 0; j <= j_max; ++j)
    w.weights[std::size_t(j + 1)] = std::ldexp(1.0, -j);
  return w;
}

WeakFunctional::WeakFunctional(const FilterBank& fb, WeakSequenceSpec seq,
                               double s)
    : fb_(fb), seq_(std::move(seq)), s_(s) {
  if (!(seq_.ell1() < std::numeric_limits<double>::infinity()))
    throw std::invalid_argument("weak sequence must be summable");
  const TorusGrid& g = fb.grid();
  base_.assign(g.size(), 0.0);
  const int hi = std::min(seq_.j_max(), fb.j_max());
  for (int j = -1; j <= hi; ++j) {
    const double w = seq_.at(j) * std::pow(2.0, j * s_);
    const std::vector<double>& m = fb.multiplier(j);
    for (std::size_t i = 0; i < base_.size(); ++i) base_[i] += w * m[i];
  }
}

double WeakFunctional::apply(const SpectralField& v,
                             const std::vector<double>& m) const {
  const TorusGrid& g = v.grid();
  if (v.grid() != fb_.grid()) throw std::invalid_argument("grid mismatch");
  std::vector<double> mag(g.size(), 0.0);
  AlignedVector<cplx> scratch(g.size());
  const double wnorm = 1.0 / (g.period * g.period);
  for (int c = 0; c < v.ncomp(); ++c) {
    const cplx* in = v.comp(c);
    for (std::size_t i = 0; i < g.size(); ++i) scratch[i] = m[i] * in[i];
    fft2d(scratch.data(), g.n, +1);
    for (std::size_t i = 0; i < g.size(); ++i)
      mag[i] += std::norm(wnorm * scratch[i]);
  }
  double total = 0;
  for (int p1 = 0; p1 < g.n; ++p1) {
    double row = 0;
    const double* r = mag.data() + std::size_t(p1) * g.n;
    for (int p2 = 0; p2 < g.n; ++p2) row += std::sqrt(r[p2]);
    total += row;
  }
  return total * g.dx() * g.dx();
}

double WeakFunctional::operator()(const SpectralField& v) const {
  return apply(v, base_);
}

double WeakFunctional::mollified(const SpectralField& v, double eps) const {
  auto it = mollifier_.find(eps);
  if (it == mollifier_.end()) {
    const TorusGrid& g = fb_.grid();
    std::vector<double> m(g.size(), 0.0);
    for (int j = -1; j <= fb_.j_max(); ++j) {
      const double w = std::pow(2.0, -eps * j);
      const std::vector<double>& mj = fb_.multiplier(j);
      for (std::size_t i = 0; i < m.size(); ++i) m[i] += w * mj[i];
    }
    for (std::size_t i = 0; i < m.size(); ++i) m[i] *= base_[i];
    it = mollifier_.emplace(eps, std::move(m)).first;
  }
  return apply(v, it->second);
}

SpectralField mollified_field(const SpectralField& u, const FilterBank& fb,
                              double eps) {
  const TorusGrid& g = u.grid();
  SpectralField out(g, u.ncomp());
  for (int j = -1; j <= fb.j_max(); ++j) {
    const double w = std::pow(2.0, -eps * j);
    const std::vector<double>& m = fb.multiplier(j);
    for (int c = 0; c < u.ncomp(); ++c) {
      const cplx* in = u.comp(c);
      cplx* o = out.comp(c);
      for (std::size_t i = 0; i < g.size(); ++i) o[i] += w * m[i] * in[i];
    }
  }
  return out;
}

std::vector<double> partial_sum_residuals(const SpectralField& u,
                                          const FilterBank& fb, double s,
                                          double eps,
                                          std::span<const int> ells) {
  std::vector<double> out;
  for (int ell : ells) {
    SpectralField tail = u - fb.partial_sum(u, ell);
    out.push_back(tl_norm(tail, fb, s - eps));
  }
  return out;
}

RhsResult euler_rhs(const SpectralField& u, ProductWorkspace& ws) {
  if (u.ncomp() != 2) throw std::invalid_argument("need a 2-component field");
  const TorusGrid& g = u.grid();

  // vorticity spectrum
  SpectralField w(g, 1);
  {
    const cplx* u1 = u.comp(0);
    const cplx* u2 = u.comp(1);
    cplx* o = w.comp(0);
    for (int p1 = 0; p1 < g.n; ++p1) {
      const double xi1 = g.freq(p1);
      for (int p2 = 0; p2 < g.n; ++p2) {
        const double xi2 = g.freq(p2);
        const std::size_t i = g.at(p1, p2);
        o[i] = cplx(0, 1) * (xi1 * u2[i] - xi2 * u1[i]);
      }
    }
  }

  cplx* vort = ws.to_padded_space(w, 0, 0);
  cplx* s1 = ws.to_padded_space(u, 0, 1);
  cplx* s2 = ws.to_padded_space(u, 1, 2);
  const std::size_t m = ws.padded_grid().size();
  double speed2 = 0;
  for (std::size_t i = 0; i < m; ++i) {
    speed2 = std::max(speed2, std::norm(s1[i]) + std::norm(s2[i]));
    const cplx a = s1[i], b = s2[i];
    s1[i] = -vort[i] * b;  // first component of omega * u-perp
    s2[i] = vort[i] * a;
  }

  RhsResult r{SpectralField(g, 2), std::sqrt(speed2)};
  ws.from_padded_space(1, r.f, 0);
  ws.from_padded_space(2, r.f, 1);
  leray_in_place(r.f);
  for (cplx& v : r.f.raw()) v = -v;
  r.f.comp(0)[0] = 0;
  r.f.comp(1)[0] = 0;
  return r;
}

void rk4_step(SpectralField& u, double dt, ProductWorkspace& ws,
              double stability_limit) {
  const TorusGrid& g = u.grid();
  const double max_xi = g.nyquist() * std::sqrt(2.0);

  RhsResult k1 = euler_rhs(u, ws);
  if (dt * k1.max_speed * max_xi > stability_limit)
    throw std::runtime_error("advective stability bound violated");
  if (!k1.f.finite()) throw std::runtime_error("solver state not finite");

  SpectralField stage = u;
  axpy(0.5 * dt, k1.f, stage);
  RhsResult k2 = euler_rhs(stage, ws);

  stage = u;
  axpy(0.5 * dt, k2.f, stage);
  RhsResult k3 = euler_rhs(stage, ws);

  stage = u;
  axpy(dt, k3.f, stage);
  RhsResult k4 = euler_rhs(stage, ws);

  axpy(dt / 6.0, k1.f, u);
  axpy(dt / 3.0, k2.f, u);
  axpy(dt / 3.0, k3.f, u);
  axpy(dt / 6.0, k4.f, u);
}

namespace {

DiffNormRow diff_norms(const SpectralField& a, const SpectralField& b,
                       double t1, double t2, const FilterBank& fb, double s,
                       bool with_hist) {
  SpectralField d = b - a;
  const double svals[3] = {s, s - 0.5, s - 1.0};
  auto n = tl_norms_multi(d, fb, svals);
  DiffNormRow row;
  row.t1 = t1;
  row.t2 = t2;
  row.f_s = n[0];
  row.f_s_half = n[1];
  row.f_s_one = n[2];
  if (with_hist) row.argmax_shell = sup_shell_histogram(d, fb, s).argmax_shell;
  return row;
}

}  // namespace

TraceRecord simulate(const SimulationConfig& cfg, const SpectralField& u0) {
  if (cfg.dt < 0 || cfg.steps < 0) throw std::invalid_argument("bad horizon");
  if (cfg.tracked_points.size() != cfg.tracked_k.size())
    throw std::invalid_argument("tracked point/label mismatch");
  const TorusGrid& g = cfg.grid;
  if (u0.grid() != g) throw std::invalid_argument("grid mismatch");

  const int jmax = cfg.j_max > 0 ? cfg.j_max : default_j_max(g);
  FilterBank fb(g, jmax);
  fb.warm_cache();
  WeakFunctional weak(fb, cfg.weak.weights.empty()
                              ? WeakSequenceSpec::geometric(jmax)
                              : cfg.weak,
                      cfg.s);

  TraceRecord rec;
  rec.config = cfg;
  rec.energy0 = spectral_energy(u0);
  rec.quad_invariant0 = std::abs(bilinear_energy(u0));
  rec.w1inf0 = w1inf_norm(u0);

  ProductWorkspace ws(g);
  SpectralField u = u0;
  SpectralField prev_snapshot = u0;
  double prev_snapshot_t = 0;

  auto record_row = [&](double t) {
    TraceRow row;
    row.t = t;
    for (auto& mp : cfg.tracked_points) {
      row.uhat1.push_back(u.at(0, g.storage_index(mp[0]), g.storage_index(mp[1])));
      row.uhat2.push_back(u.at(1, g.storage_index(mp[0]), g.storage_index(mp[1])));
    }
    row.energy = spectral_energy(u);
    row.quad_invariant = std::abs(bilinear_energy(u));
    double ma = 0;
    for (int c = 0; c < 2; ++c) ma += std::norm(field_mean(u, c));
    row.mean_abs = std::sqrt(ma);
    row.div_rel = relative_divergence(u);
    row.weak_n = weak(u);
    for (double eps : cfg.epsilons)
      row.weak_n_mollified.push_back(weak.mollified(u, eps));
    rec.rows.push_back(std::move(row));
  };

  auto snapshot = [&](int step, double t) {
    if (std::find(cfg.snapshot_steps.begin(), cfg.snapshot_steps.end(),
                  step) == cfg.snapshot_steps.end())
      return;
    rec.diffs.push_back(diff_norms(u0, u, 0.0, t, fb, cfg.s, true));
    if (prev_snapshot_t > 0)
      rec.diffs.push_back(
          diff_norms(prev_snapshot, u, prev_snapshot_t, t, fb, cfg.s, false));
    prev_snapshot = u;
    prev_snapshot_t = t;
  };

  record_row(0.0);
  snapshot(0, 0.0);
  for (int step = 1; step <= cfg.steps; ++step) {
    rk4_step(u, cfg.dt, ws, cfg.stability_limit);
    const double t = step * cfg.dt;
    if (step % cfg.sample_every == 0 || step == cfg.steps) record_row(t);
    snapshot(step, t);
  }
  if (cfg.keep_final_state) rec.final_state = u;
  return rec;
}

}  // namespace lp
