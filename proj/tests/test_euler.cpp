#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "lp/analysis.hpp"
#include "lp/counterexample.hpp"
#include "lp/euler.hpp"
#include "lp/spectral.hpp"

using namespace lp;

namespace {

double linf(const SpectralField& f) { return lebesgue_norms(inverse(f)).linf; }

// Taylor-Green vortex (steady Euler solution)
SpectralField taylor_green(const TorusGrid& g) {
  RealField u(g, 2);
  for (int p1 = 0; p1 < g.n; ++p1)
    for (int p2 = 0; p2 < g.n; ++p2) {
      const double x = g.coord(p1), y = g.coord(p2);
      u.at(0, p1, p2) = std::sin(x) * std::cos(y);
      u.at(1, p1, p2) = -std::cos(x) * std::sin(y);
    }
  return forward(u);
}

// unsteady variant for order checks: superpose a second, incommensurate
// vortex so the nonlinearity does not cancel
SpectralField perturbed_vortex(const TorusGrid& g) {
  RealField u(g, 2);
  for (int p1 = 0; p1 < g.n; ++p1)
    for (int p2 = 0; p2 < g.n; ++p2) {
      const double x = g.coord(p1), y = g.coord(p2);
      u.at(0, p1, p2) = std::sin(x) * std::cos(y) + 0.3 * std::cos(2 * y);
      u.at(1, p1, p2) = -std::cos(x) * std::sin(y) + 0.2 * std::sin(3 * x);
    }
  SpectralField s = forward(u);
  leray_in_place(s);
  s.comp(0)[0] = 0;
  s.comp(1)[0] = 0;
  return s;
}

}  // namespace

TEST_CASE("rhs: constants and the steady vortex") {
  TorusGrid g = make_grid(128, 2 * kPi);
  ProductWorkspace ws(g);

  SpectralField c(g, 2);
  c.comp(0)[0] = g.period * g.period;
  CHECK(linf(euler_rhs(c, ws).f) <= 1e-14);

  SpectralField tg = taylor_green(g);
  // the convective term is the known gradient field 1/2 (sin 2x, sin 2y)
  SpectralField w = convective(tg, tg);
  RealField ws_r = inverse(w);
  double worst = 0;
  for (int p1 = 0; p1 < g.n; ++p1)
    for (int p2 = 0; p2 < g.n; ++p2) {
      worst = std::max(worst, std::abs(ws_r.at(0, p1, p2) -
                                       0.5 * std::sin(2 * g.coord(p1))));
      worst = std::max(worst, std::abs(ws_r.at(1, p1, p2) -
                                       0.5 * std::sin(2 * g.coord(p2))));
    }
  CHECK(worst <= 1e-10);

  // ... and it projects to zero (steady state)
  RhsResult r = euler_rhs(tg, ws);
  CHECK(linf(r.f) <= 1e-10);
  CHECK(r.max_speed == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("rotational evaluation equals projected convective form") {
  TorusGrid g = make_grid(128, 2 * kPi);
  ProductWorkspace ws(g);
  SpectralField u = perturbed_vortex(g);
  SpectralField a = euler_rhs(u, ws).f;
  SpectralField b = leray(convective(u, u));
  for (cplx& v : b.raw()) v = -v;
  b.comp(0)[0] = 0;
  b.comp(1)[0] = 0;
  CHECK(linf(a - b) <= 1e-12 * linf(b));
}

TEST_CASE("rhs at the tracked modes matches the sparse oracle") {
  TorusGrid g = make_grid(512, 16 * kPi);
  CounterexampleSpec spec = CounterexampleSpec::grid_adapted(3);
  SpectralField u0 = build_u0(spec, g);
  SparseSpectrum alpha = build_alpha(spec, g);
  ProductWorkspace ws(g);
  SpectralField rhs = euler_rhs(u0, ws).f;
  for (int k = 2; k <= 3; ++k) {
    auto xi = spec.xi_point(k);
    auto m = nearest_lattice(g, xi[0], xi[1]);
    auto oracle = grid_projected_oracle(alpha, m);
    const cplx a = rhs.at(0, g.storage_index(m[0]), g.storage_index(m[1]));
    const cplx b = rhs.at(1, g.storage_index(m[0]), g.storage_index(m[1]));
    const double scale =
        std::max(std::hypot(std::abs(oracle[0]), std::abs(oracle[1])), 1e-300);
    CHECK(std::abs(a + oracle[0]) <= 1e-8 * scale);  // rhs = -projection
    CHECK(std::abs(b + oracle[1]) <= 1e-8 * scale);
  }
}

TEST_CASE("rk4: zero field, order, conservation") {
  TorusGrid g = make_grid(64, 2 * kPi);
  ProductWorkspace ws(g);

  SpectralField z(g, 2);
  rk4_step(z, 0.01, ws);
  CHECK(linf(z) == 0.0);

  // order: error against a dt/8 reference over a fixed horizon
  auto advance = [&](SpectralField u, double dt, int steps) {
    for (int i = 0; i < steps; ++i) rk4_step(u, dt, ws);
    return u;
  };
  const double T = 0.064;
  SpectralField u0 = perturbed_vortex(g);
  SpectralField ref = advance(u0, T / 64, 64);
  SpectralField e1 = advance(u0, T / 8, 8) - ref;
  SpectralField e2 = advance(u0, T / 16, 16) - ref;
  const double ratio = l2_norm(inverse(e1)) / l2_norm(inverse(e2));
  CHECK(ratio >= 16.0 * 0.7);
  CHECK(ratio <= 16.0 * 1.3);

  // energy conservation over 100 steps (drift is pure time-discretization
  // error, scaling like dt^5 per step)
  SpectralField u = u0;
  const double E0 = spectral_energy(u);
  for (int i = 0; i < 100; ++i) rk4_step(u, 5e-4, ws);
  CHECK(std::abs(spectral_energy(u) - E0) <= 1e-8 * E0);
  CHECK(relative_divergence(u) <= 1e-10);

  // stability guard
  CHECK_THROWS_AS(rk4_step(u, 50.0, ws), std::runtime_error);
}

TEST_CASE("simulate: degenerate horizon and invariants") {
  TorusGrid g = make_grid(256, 16 * kPi);
  CounterexampleSpec spec = CounterexampleSpec::grid_adapted(3);
  SpectralField u0 = build_u0(spec, g);

  SimulationConfig cfg;
  cfg.grid = g;
  cfg.dt = 1e-3;
  cfg.steps = 0;
  cfg.s = 3.0;
  for (int k = 2; k <= 3; ++k) {
    auto xi = spec.xi_point(k);
    cfg.tracked_k.push_back(k);
    cfg.tracked_points.push_back(nearest_lattice(g, xi[0], xi[1]));
  }
  TraceRecord t0 = simulate(cfg, u0);
  CHECK(t0.rows.size() == 1);

  cfg.dt = 2.5e-4;
  cfg.steps = 8;
  cfg.snapshot_steps = {2, 4, 8};
  cfg.keep_final_state = true;
  TraceRecord tr = simulate(cfg, u0);
  CHECK(tr.rows.size() == 9);
  // the conserved bilinear form 1/2 int u.u vanishes identically for this
  // datum (one-quadrant spectral support), and the support structure is
  // preserved by the flow; the hermitian energy is not an invariant of the
  // complex-valued equations and is only recorded
  CHECK(tr.quad_invariant0 == 0.0);
  for (const TraceRow& r : tr.rows) {
    CHECK(r.mean_abs <= 1e-12);
    CHECK(r.div_rel <= 1e-10);
    CHECK(r.quad_invariant <= 1e-12 * tr.energy0);
  }
  CHECK(tr.diffs.size() == 5);  // 3 vs-zero + 2 adjacent
}

TEST_CASE("first-order coefficient drift (Duhamel)") {
  TorusGrid g = make_grid(512, 16 * kPi);
  CounterexampleSpec spec = CounterexampleSpec::grid_adapted(3);
  SpectralField u0 = build_u0(spec, g);
  SparseSpectrum alpha = build_alpha(spec, g);

  SimulationConfig cfg;
  cfg.grid = g;
  cfg.dt = 2e-3;
  cfg.steps = 5;
  cfg.s = 3.0;
  auto xi = spec.xi_point(3);
  cfg.tracked_k = {3};
  cfg.tracked_points = {nearest_lattice(g, xi[0], xi[1])};
  TraceRecord tr = simulate(cfg, u0);

  auto drift = grid_projected_oracle(alpha, cfg.tracked_points[0]);
  // u-hat(t) - u-hat(0) + t * drift = O(t^2): Richardson quotient of the
  // residual at t and t/... consecutive samples
  std::vector<double> resid;
  for (int i : {1, 2, 4}) {
    const TraceRow& r = tr.rows[i];
    const double t = r.t;
    const cplx d1 = r.uhat1[0] - tr.rows[0].uhat1[0] + t * drift[0];
    const cplx d2 = r.uhat2[0] - tr.rows[0].uhat2[0] + t * drift[1];
    resid.push_back(std::hypot(std::abs(d1), std::abs(d2)) / (t * t));
  }
  // t^2 scaling: the normalized residuals agree within 5%
  CHECK(std::abs(resid[1] - resid[0]) <= 0.05 * resid[0]);
  CHECK(std::abs(resid[2] - resid[1]) <= 0.05 * resid[1]);
}

TEST_CASE("weak functional") {
  TorusGrid g = make_grid(256, 16 * kPi);
  FilterBank fb(g, default_j_max(g));
  CounterexampleSpec spec = CounterexampleSpec::grid_adapted(3);
  SpectralField u0 = build_u0(spec, g);
  const double s = 3.0;

  // one-hot sequence picks out a single weighted block
  WeakSequenceSpec onehot;
  onehot.weights.assign(std::size_t(fb.j_max() + 2), 0.0);
  onehot.weights[3 + 1] = 1.0;
  WeakFunctional n3(fb, onehot, s);
  const double direct =
      std::pow(2.0, 3 * s) * lebesgue_norms(inverse(fb.block(u0, 3))).l1;
  CHECK(std::abs(n3(u0) - direct) <= 1e-12 * direct);

  // bound by ell^1 weight times the TL norm
  WeakSequenceSpec geo = WeakSequenceSpec::geometric(fb.j_max());
  WeakFunctional n(fb, geo, s);
  CHECK(n(u0) <= geo.ell1() * tl_norm(u0, fb, s) * (1 + 1e-12));

  // mollified values converge as eps -> 0
  const double base = n(u0);
  double prev = 1e300;
  for (double eps : {0.4, 0.2, 0.1}) {
    const double gap = std::abs(n.mollified(u0, eps) - base);
    CHECK(gap < prev);
    prev = gap;
  }
}

TEST_CASE("partial-sum approximants") {
  TorusGrid g = make_grid(1024, 16 * kPi);
  FilterBank fb(g, default_j_max(g));
  CounterexampleSpec spec = CounterexampleSpec::grid_adapted(5);
  SpectralField u0 = build_u0(spec, g);

  // residual decays like 2^{-ell eps} per unit ell (within 20%)
  const double eps = 1.0;
  std::vector<int> ells = {1, 2, 3};
  auto res = partial_sum_residuals(u0, fb, spec.s, eps, ells);
  for (std::size_t i = 0; i + 1 < res.size(); ++i) {
    const double ratio = res[i + 1] / res[i];
    CHECK(ratio <= 0.5 * 1.2);
    CHECK(ratio >= 0.5 * 0.8);
  }

  // beyond the band limit the tail vanishes
  auto zero = partial_sum_residuals(u0, fb, spec.s, 0.5,
                                    std::vector<int>{fb.j_max()});
  CHECK(zero[0] <= 1e-12);
}

TEST_CASE("mollified field approaches the original in the N functional") {
  TorusGrid g = make_grid(256, 16 * kPi);
  FilterBank fb(g, default_j_max(g));
  CounterexampleSpec spec = CounterexampleSpec::grid_adapted(3);
  SpectralField u0 = build_u0(spec, g);
  WeakFunctional n(fb, WeakSequenceSpec::geometric(fb.j_max()), spec.s);
  // u_eps built as a field gives the same values as the fused multiplier
  for (double eps : {0.4, 0.1}) {
    SpectralField ue = mollified_field(u0, fb, eps);
    CHECK(std::abs(n(ue) - n.mollified(u0, eps)) <=
          1e-10 * std::max(1.0, n(ue)));
  }
}
