#include "lp/counterexample.hpp"

#include <cmath>
#include <stdexcept>

#include "lp/cutoff.hpp"
#include "lp/spectral.hpp"

namespace lp {

namespace {

std::uint64_t key(int m1, int m2) {
  return (std::uint64_t(std::uint32_t(m1)) << 32) | std::uint32_t(m2);
}

double dot(std::array<double, 2> a, std::array<double, 2> b) {
  return a[0] * b[0] + a[1] * b[1];
}

}  // namespace

CounterexampleSpec CounterexampleSpec::faithful(int k_max, double s,
                                                double theta) {
  CounterexampleSpec c;
  c.variant = BumpVariant::faithful;
  c.k_max = k_max;
  c.s = s;
  c.theta = theta;
  c.delta = 1.0 / 16;
  c.rho = 1.0 / 32;
  c.validate();
  return c;
}

CounterexampleSpec CounterexampleSpec::grid_adapted(int k_max, double s,
                                                    double theta) {
  CounterexampleSpec c;
  c.variant = BumpVariant::grid_adapted;
  c.k_max = k_max;
  c.s = s;
  c.theta = theta;
  c.delta = 0.25;
  c.rho = 0.5;
  c.validate();
  return c;
}

std::array<double, 2> CounterexampleSpec::xi_point(int j) const {
  const double r = 5.0 * std::ldexp(1.0, j - 2);
  auto d = e();
  return {r * d[0], r * d[1]};
}

std::array<double, 2> CounterexampleSpec::low_center() const {
  auto c = xi_point(-1);
  auto p = e_perp();
  return {c[0] + delta * p[0], c[1] + delta * p[1]};
}

void CounterexampleSpec::validate() const {
  if (s < 3.0)
    throw std::invalid_argument("regularity exponent must satisfy s >= d+1 = 3");
  if (k_max < 2) throw std::invalid_argument("k_max must be >= 2");
  if (!(rho > 0)) throw std::invalid_argument("low-bump radius must be positive");
  if (delta == 0.0)
    throw std::invalid_argument(
        "moment condition violated: zero low-bump offset gives J = 0");
  if (variant == BumpVariant::faithful && delta + rho > 0.125 + 1e-15)
    throw std::invalid_argument(
        "faithful variant requires delta + rho <= 1/8 (support containment)");
}

void SparseSpectrum::add(int m1, int m2, cplx v, int tag) {
  auto it = index_.find(key(m1, m2));
  if (it != index_.end()) {
    entries_[it->second].value += v;
    return;
  }
  index_.emplace(key(m1, m2), entries_.size());
  entries_.push_back({m1, m2, v, tag});
}

cplx SparseSpectrum::value_at(int m1, int m2) const {
  auto it = index_.find(key(m1, m2));
  return it == index_.end() ? cplx(0, 0) : entries_[it->second].value;
}

SpectralField SparseSpectrum::to_field() const {
  SpectralField f(grid_, 1);
  cplx* o = f.comp(0);
  for (const SparseEntry& e : entries_)
    o[grid_.at(grid_.storage_index(e.m1), grid_.storage_index(e.m2))] = e.value;
  return f;
}

namespace {

// collect lattice samples of chi((xi - c)/scale) into `out`
void sample_ball(SparseSpectrum& out, const TorusGrid& g,
                 std::array<double, 2> c, double scale, double coeff,
                 int tag) {
  const double radius = MotherCutoff::support_radius * scale;
  if (std::sqrt(dot(c, c)) + radius > g.nyquist())
    throw std::invalid_argument("bump support exceeds the Nyquist limit");
  const int lo1 = int(std::floor((c[0] - radius) / g.dxi));
  const int hi1 = int(std::ceil((c[0] + radius) / g.dxi));
  const int lo2 = int(std::floor((c[1] - radius) / g.dxi));
  const int hi2 = int(std::ceil((c[1] + radius) / g.dxi));
  for (int m1 = lo1; m1 <= hi1; ++m1)
    for (int m2 = lo2; m2 <= hi2; ++m2) {
      const double x = (g.dxi * m1 - c[0]) / scale;
      const double y = (g.dxi * m2 - c[1]) / scale;
      const double v = MotherCutoff::chi(x, y);
      if (v > 0)
        out.add(m1, m2, quantize_significand(coeff * v), tag);
    }
}

}  // namespace

SparseSpectrum build_bump(int j, const CounterexampleSpec& spec,
                          const TorusGrid& g) {
  SparseSpectrum out(g);
  if (j == 0) return out;  // a_0 is identically zero
  if (j == -1) return build_low_bump(spec, g);
  sample_ball(out, g, spec.xi_point(j), 1.0, 1.0, j);
  return out;
}

SparseSpectrum build_low_bump(const CounterexampleSpec& spec,
                              const TorusGrid& g) {
  spec.validate();
  if (spec.variant == BumpVariant::grid_adapted && spec.rho < 4 * g.dxi)
    throw std::invalid_argument(
        "low bump unresolvable: rho < 4 lattice cells");
  SparseSpectrum out(g);
  sample_ball(out, g, spec.low_center(), spec.rho, 1.0, -1);
  return out;
}

SparseSpectrum build_alpha(const CounterexampleSpec& spec,
                           const TorusGrid& g) {
  spec.validate();
  if (spec.variant == BumpVariant::grid_adapted && spec.rho < 4 * g.dxi)
    throw std::invalid_argument(
        "low bump unresolvable: rho < 4 lattice cells");
  SparseSpectrum out(g);
  sample_ball(out, g, spec.low_center(), spec.rho,
              std::pow(2.0, (spec.s + 1.0)), -1);
  for (int j = 1; j <= spec.k_max; ++j)
    sample_ball(out, g, spec.xi_point(j), 1.0,
                std::pow(2.0, -j * (spec.s + 1.0)), j);
  return out;
}

SpectralField build_u0(const CounterexampleSpec& spec, const TorusGrid& g) {
  SparseSpectrum alpha = build_alpha(spec, g);
  SpectralField u(g, 2);
  cplx* u1 = u.comp(0);
  cplx* u2 = u.comp(1);
  for (const SparseEntry& e : alpha.entries()) {
    // u0-hat = i (-xi_2, xi_1) alpha-hat; written so that both divergence
    // products share the same rounding path (see util.hpp)
    const double a = e.value.real();
    const double xi1 = g.dxi * e.m1;
    const double xi2 = g.dxi * e.m2;
    const std::size_t at = g.at(g.storage_index(e.m1), g.storage_index(e.m2));
    u1[at] = cplx(0.0, -(xi2 * a));
    u2[at] = cplx(0.0, xi1 * a);
  }
  return u;
}

double alpha_hat_exact(const CounterexampleSpec& spec, double xi1,
                       double xi2) {
  auto c = spec.low_center();
  double v = std::pow(2.0, spec.s + 1.0) *
             MotherCutoff::chi((xi1 - c[0]) / spec.rho, (xi2 - c[1]) / spec.rho);
  for (int j = 1; j <= spec.k_max; ++j) {
    auto p = spec.xi_point(j);
    const double d1 = xi1 - p[0];
    const double d2 = xi2 - p[1];
    if (d1 * d1 + d2 * d2 >= 1.0) continue;
    v += std::pow(2.0, -j * (spec.s + 1.0)) * MotherCutoff::chi(d1, d2);
  }
  return v;
}

std::array<cplx, 2> u0_hat_exact(const CounterexampleSpec& spec, double xi1,
                                 double xi2) {
  const double a = alpha_hat_exact(spec, xi1, xi2);
  return {cplx(0.0, -xi2 * a), cplx(0.0, xi1 * a)};
}

std::array<cplx, 2> u0_hat_closed_form(const CounterexampleSpec& spec,
                                       int k) {
  const double mag = 5.0 * std::pow(2.0, -k * spec.s - 2.0);
  auto d = spec.e();
  return {cplx(0.0, -mag * d[1]), cplx(0.0, mag * d[0])};
}

InteractionTable interaction_table(int k, const CounterexampleSpec& spec) {
  // below k = 3 the table may exceed three pairs; the actual list is
  // returned either way
  if (k < 1 || k > spec.k_max)
    throw std::invalid_argument("interaction table needs 1 <= k <= k_max");
  std::vector<int> tags;
  tags.push_back(-1);
  for (int j = 1; j <= spec.k_max; ++j) tags.push_back(j);
  auto center = [&](int t) {
    return t == -1 ? spec.low_center() : spec.xi_point(t);
  };
  auto radius = [&](int t) { return t == -1 ? spec.rho : 1.0; };
  auto target = spec.xi_point(k);
  InteractionTable table;
  table.k = k;
  for (int i : tags)
    for (int j : tags) {
      auto ci = center(i);
      auto cj = center(j);
      const double g1 = target[0] - ci[0] - cj[0];
      const double g2 = target[1] - ci[1] - cj[1];
      const double margin =
          radius(i) + radius(j) - std::sqrt(g1 * g1 + g2 * g2);
      if (margin >= 0) table.pairs.push_back({i, j, margin});
    }
  return table;
}

namespace {

// midpoint sum of f over the square lattice {c + (i,j) h} restricted to
// |x - c| <= radius + h
template <class F>
double ball_sum(std::array<double, 2> c, double radius, double h, F f) {
  const int m = int(std::ceil(radius / h)) + 1;
  double total = 0;
  for (int i = -m; i <= m; ++i) {
    double row = 0;
    for (int j = -m; j <= m; ++j) row += f(c[0] + i * h, c[1] + j * h);
    total += row;
  }
  return total * h * h;
}

}  // namespace

OverlapIntegrals overlap_integrals(int k, const CounterexampleSpec& spec) {
  OverlapIntegrals out;
  const auto ep = spec.e_perp();
  auto w = [&](double x, double y) { return 2.0 * (x * ep[0] + y * ep[1]); };
  const auto c = spec.low_center();
  const double h_low = spec.rho / 64.0;
  auto low_bump = [&](double x, double y) {
    return MotherCutoff::chi((x - c[0]) / spec.rho, (y - c[1]) / spec.rho);
  };
  out.moment_j = ball_sum(c, spec.rho, h_low,
                          [&](double x, double y) { return w(x, y) * low_bump(x, y); });
  const double h_pair = std::ldexp(1.0, -10);
  const auto target = spec.xi_point(k);
  for (int ell = 1; ell <= 2; ++ell) {
    out.low_direct[ell - 1] =
        ball_sum(c, spec.rho, h_low, [&](double x, double y) {
          return w(x, y) * (ell == 1 ? x : y) * low_bump(x, y);
        });
    out.shell_pair[ell - 1] =
        ball_sum({0, 0}, 1.0, h_pair, [&](double x, double y) {
          const double q = MotherCutoff::chi(x, y);
          return w(x, y) * (ell == 1 ? x : y) * q * q;
        });
    out.low_reflected[ell - 1] =
        out.low_direct[ell - 1] - target[ell - 1] * out.moment_j;
  }
  return out;
}

namespace {

// standard Leray projector at direction d (|d| = 1): I - d d^T
std::array<cplx, 2> project_standard(std::array<double, 2> d,
                                     std::array<cplx, 2> v) {
  const cplx along = d[0] * v[0] + d[1] * v[1];
  return {v[0] - d[0] * along, v[1] - d[1] * along};
}

// componentwise pair of the displayed symbol: (1 - (d1+d2) d_ell)
std::array<cplx, 2> project_paper_pair(std::array<double, 2> d,
                                       std::array<cplx, 2> v) {
  const double sum = d[0] + d[1];
  return {(1.0 - sum * d[0]) * v[0], (1.0 - sum * d[1]) * v[1]};
}

}  // namespace

MechanismConstants mechanism_constants(const CounterexampleSpec& spec,
                                       int k_lo, int k_hi) {
  if (k_lo < 3 || k_hi > spec.k_max || k_lo > k_hi)
    throw std::invalid_argument("mechanism range needs 3 <= k_lo <= k_hi <= k_max");
  if (spec.variant != BumpVariant::faithful)
    throw std::invalid_argument(
        "mechanism constants assume the faithful low bump (plateau "
        "containment)");
  // the three-region quadrature is complete only when exactly three bump
  // pairs survive
  for (int k = k_lo; k <= k_hi; ++k)
    if (interaction_table(k, spec).pairs.size() != 3)
      throw std::runtime_error("unexpected surviving support pairs");
  MechanismConstants mc;
  const double s = spec.s;
  const auto e = spec.e();
  const double inv2pi2 = 1.0 / (4.0 * kPi * kPi);

  OverlapIntegrals base = overlap_integrals(k_lo, spec);
  mc.moment_j = base.moment_j;
  mc.raw_low = base.low_direct;
  mc.raw_pair = base.shell_pair;

  mc.c0 = {cplx(0.0, -1.25 * e[1]), cplx(0.0, 1.25 * e[0])};

  // dominant (k-independent) part of 2^{ks-k} F((u0.grad)u0)(xi^k):
  // a_ell = -i 25 (2pi)^{-2} J 2^{s-4} e_ell, then staple (-a_2, a_1)
  const double adom = -25.0 * inv2pi2 * mc.moment_j * std::pow(2.0, s - 4.0);
  std::array<cplx, 2> dom = {cplx(0.0, -adom * e[1]), cplx(0.0, adom * e[0])};
  mc.c1_standard = project_standard(e, dom);
  mc.c1_paper_pair = project_paper_pair(e, dom);

  const auto c = spec.low_center();
  const double h_low = spec.rho / 64.0;
  const double h_pair = std::ldexp(1.0, -10);

  for (int k = k_lo; k <= k_hi; ++k) {
    const auto target = spec.xi_point(k);
    // the shell-pair and low-ball integrals are k-independent; only the
    // reflected term picks up the xi^k moment factor
    std::array<double, 2> low_reflected = {
        base.low_direct[0] - target[0] * base.moment_j,
        base.low_direct[1] - target[1] * base.moment_j};

    // route A: reduced integrals with the paper's coefficients
    std::array<cplx, 2> conv_a;
    for (int ell = 1; ell <= 2; ++ell) {
      const double c_low = std::pow(2.0, -(k - 1) * (s + 1.0));
      const double c_pair = std::pow(2.0, (-2.0 * k + 2.0) * (s + 1.0));
      const double reduced =
          c_low * (base.low_direct[ell - 1] + low_reflected[ell - 1]) +
          c_pair * base.shell_pair[ell - 1];
      // F((u0.grad) d_ell alpha)(xi^k) = i 5 2^{k-3} (2pi)^{-2} I_ell
      conv_a[ell - 1] =
          cplx(0.0, 5.0 * std::ldexp(1.0, k - 3) * inv2pi2 * reduced);
    }
    std::array<cplx, 2> field_a = {-conv_a[1], conv_a[0]};

    // route B: raw convolution integrand over the same lattices
    auto raw = [&](double x, double y, int ell) {
      // sum_a u0hat_a(xi) * i(t-xi)_a * i(t-xi)_ell * alpha-hat(t-xi)
      const double ax = alpha_hat_exact(spec, x, y);
      if (ax == 0) return cplx(0, 0);
      const double tx = target[0] - x, ty = target[1] - y;
      const double at = alpha_hat_exact(spec, tx, ty);
      if (at == 0) return cplx(0, 0);
      const cplx u1(0.0, -y * ax), u2(0.0, x * ax);
      const cplx dotpart = u1 * cplx(0.0, tx) + u2 * cplx(0.0, ty);
      return dotpart * cplx(0.0, ell == 1 ? tx : ty) * at;
    };
    std::array<cplx, 2> conv_b;
    const std::array<double, 2> refl_center = {target[0] - c[0],
                                               target[1] - c[1]};
    for (int ell = 1; ell <= 2; ++ell) {
      cplx acc(0, 0);
      auto add = [&](std::array<double, 2> ctr, double radius, double h) {
        const int m = int(std::ceil(radius / h)) + 1;
        for (int i = -m; i <= m; ++i) {
          cplx row(0, 0);
          for (int j = -m; j <= m; ++j)
            row += raw(ctr[0] + i * h, ctr[1] + j * h, ell);
          acc += row * (h * h);
        }
      };
      add(c, spec.rho, h_low);
      add(spec.xi_point(k - 1), 1.0, h_pair);
      add(refl_center, spec.rho, h_low);
      conv_b[ell - 1] = inv2pi2 * acc;
    }
    std::array<cplx, 2> field_b = {-conv_b[1], conv_b[0]};

    MechanismConstants::PerK pk;
    pk.k = k;
    pk.drift_reduced = project_standard(e, field_a);
    pk.drift_raw = project_standard(e, field_b);
    double gap = 0, scale = 0;
    for (int c2 = 0; c2 < 2; ++c2) {
      gap = std::max(gap, std::abs(pk.drift_reduced[c2] - pk.drift_raw[c2]));
      scale = std::max(scale, std::abs(pk.drift_raw[c2]));
    }
    pk.route_gap = scale > 0 ? gap / scale : gap;
    if (pk.route_gap > 1e-8)
      throw std::runtime_error(
          "mechanism routes disagree beyond 1e-8: implementation bug");

    const double lift = std::pow(2.0, k * s - k);
    std::array<cplx, 2> paper_proj = project_paper_pair(e, field_a);
    for (int c2 = 0; c2 < 2; ++c2) {
      pk.c2_standard[c2] = lift * pk.drift_reduced[c2] - mc.c1_standard[c2];
      pk.c2_paper_pair[c2] = lift * paper_proj[c2] - mc.c1_paper_pair[c2];
    }
    mc.per_k.push_back(pk);
  }
  return mc;
}

std::array<cplx, 2> grid_nonlinear_oracle(const SparseSpectrum& alpha,
                                          std::array<int, 2> target) {
  const TorusGrid& g = alpha.grid();
  const double w = g.dxi * g.dxi / (4.0 * kPi * kPi);
  std::array<cplx, 2> acc = {cplx(0, 0), cplx(0, 0)};
  for (const SparseEntry& e : alpha.entries()) {
    const int r1 = target[0] - e.m1;
    const int r2 = target[1] - e.m2;
    const cplx other = alpha.value_at(r1, r2);
    if (other == cplx(0, 0)) continue;
    const double xi1 = g.dxi * e.m1, xi2 = g.dxi * e.m2;
    const double t1 = g.dxi * r1, t2 = g.dxi * r2;
    const cplx u1(0.0, -(xi2 * e.value.real()));
    const cplx u2(0.0, xi1 * e.value.real());
    const cplx dotpart = u1 * cplx(0.0, t1) + u2 * cplx(0.0, t2);
    // remaining factor: u0hat_c(t) = i(-t2, t1) alpha(t)
    acc[0] += dotpart * cplx(0.0, -t2 * other.real());
    acc[1] += dotpart * cplx(0.0, t1 * other.real());
  }
  acc[0] *= w;
  acc[1] *= w;
  return acc;
}

std::array<cplx, 2> grid_projected_oracle(const SparseSpectrum& alpha,
                                          std::array<int, 2> target) {
  auto v = grid_nonlinear_oracle(alpha, target);
  const TorusGrid& g = alpha.grid();
  const double xi1 = g.dxi * target[0], xi2 = g.dxi * target[1];
  const double r2 = xi1 * xi1 + xi2 * xi2;
  if (r2 == 0) return v;
  const cplx along = (xi1 * v[0] + xi2 * v[1]) / r2;
  return {v[0] - xi1 * along, v[1] - xi2 * along};
}

PeriodizationReport periodization_study(const CounterexampleSpec& spec,
                                        const std::vector<TorusGrid>& grids) {
  if (grids.size() < 3)
    throw std::invalid_argument("periodization study needs >= 3 grids");
  for (std::size_t i = 1; i < grids.size(); ++i)
    if (std::abs(grids[i].dxi * 2 - grids[i - 1].dxi) > 1e-12 * grids[0].dxi)
      throw std::invalid_argument("grids must halve dxi");
  PeriodizationReport rep;
  for (const TorusGrid& g : grids) {
    PeriodizationRow row;
    row.n = g.n;
    row.period = g.period;
    row.dxi = g.dxi;
    SparseSpectrum a3 = build_bump(3, spec, g);
    row.a3_l1 = lebesgue_norms(inverse(a3.to_field())).l1;
    // kernel value at x = 0: L^{-2} sum of the cutoff over the lattice
    double sum = 0;
    for (int p1 = 0; p1 < g.n; ++p1) {
      double r = 0;
      for (int p2 = 0; p2 < g.n; ++p2)
        r += MotherCutoff::chi(g.freq(p1), g.freq(p2));
      sum += r;
    }
    row.phi0 = sum / (g.period * g.period);
    SpectralField u0 = build_u0(spec, g);
    double worst = 0;
    for (int k = 2; k <= spec.k_max; ++k) {
      auto xi = spec.xi_point(k);
      auto m = nearest_lattice(g, xi[0], xi[1]);
      auto closed = u0_hat_closed_form(spec, k);
      cplx g1 = u0.at(0, g.storage_index(m[0]), g.storage_index(m[1]));
      cplx g2 = u0.at(1, g.storage_index(m[0]), g.storage_index(m[1]));
      const double scale = std::hypot(std::abs(closed[0]), std::abs(closed[1]));
      const double gap = std::hypot(std::abs(g1 - closed[0]), std::abs(g2 - closed[1]));
      worst = std::max(worst, gap / scale);
    }
    row.u0_residual = worst;
    rep.rows.push_back(row);
  }
  rep.residual_monotone = true;
  for (std::size_t i = 1; i < rep.rows.size(); ++i)
    if (rep.rows[i].u0_residual >= rep.rows[i - 1].u0_residual &&
        rep.rows[i - 1].u0_residual > 1e-12)
      rep.residual_monotone = false;
  return rep;
}

}  // namespace lp
