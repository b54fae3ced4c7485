#include "lp/suites.hpp"

#include <cmath>
#include <random>

#include "lp/analysis.hpp"
#include "lp/spectral.hpp"

namespace lp {

namespace {

void add(SuiteResult& r, const std::string& name, const std::string& anchor,
         double measured, double tolerance, bool pass,
         const std::string& note = "") {
  r.checks.push_back({name, anchor, pass, measured, tolerance, note});
}

// measured <= tolerance
void add_le(SuiteResult& r, const std::string& name, const std::string& anchor,
            double measured, double tolerance, const std::string& note = "") {
  add(r, name, anchor, measured, tolerance, measured <= tolerance, note);
}

SpectralField random_band_field(const TorusGrid& g, int ncomp, double band,
                                unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  SpectralField f(g, ncomp);
  for (int c = 0; c < ncomp; ++c)
    for (int p1 = 0; p1 < g.n; ++p1)
      for (int p2 = 0; p2 < g.n; ++p2) {
        const double r = std::hypot(g.freq(p1), g.freq(p2));
        if (r <= band) f.at(c, p1, p2) = cplx(dist(rng), dist(rng));
      }
  return f;
}

void suite_partition(SuiteResult& out, const RunConfig& cfg) {
  const TorusGrid g = cfg.make_torus();
  FilterBank fb(g, default_j_max(g));
  const int jmax = fb.j_max();
  double worst_partition = 0, worst_negative = 0, worst_plateau = 0;
  const double limit = 0.75 * std::ldexp(1.0, jmax + 1);
  for (int p1 = 0; p1 < g.n; ++p1) {
    const double xi1 = g.freq(p1);
    for (int p2 = 0; p2 < g.n; ++p2) {
      const double r = std::hypot(xi1, g.freq(p2));
      double sum = MotherCutoff::psi(r);
      double plateau_other = 0;
      bool on_plateau = false;
      for (int j = 0; j <= jmax; ++j) {
        const double h = MotherCutoff::shell(j, r);
        sum += h;
        worst_negative = std::min(worst_negative, h);
        if (h == 1.0)
          on_plateau = true;
        else
          plateau_other = std::max(plateau_other, h);
      }
      if (r <= limit)
        worst_partition = std::max(worst_partition, std::abs(sum - 1.0));
      if (on_plateau)
        worst_plateau =
            std::max(worst_plateau, std::max(plateau_other,
                                             MotherCutoff::psi(r)));
    }
  }
  add_le(out, "partition_of_unity", "dyadic partition of unity",
         worst_partition, 1e-14);
  add_le(out, "shell_nonnegativity", "dyadic partition of unity",
         -worst_negative, 1e-15);
  add_le(out, "disjoint_plateau", "dyadic partition of unity", worst_plateau,
         1e-14);
}

void suite_leray(SuiteResult& out, const RunConfig&) {
  const TorusGrid g = make_grid(128, 16 * kPi);
  FilterBank fb(g, default_j_max(g));
  // gradient field from a random scalar potential
  SpectralField phi = random_band_field(g, 1, 6.0, 11);
  SpectralField grad(g, 2);
  {
    SpectralField g1 = spectral_derivative(phi, 1);
    SpectralField g2 = spectral_derivative(phi, 2);
    for (std::size_t i = 0; i < g.size(); ++i) {
      grad.comp(0)[i] = g1.comp(0)[i];
      grad.comp(1)[i] = g2.comp(0)[i];
    }
  }
  const double gscale = lebesgue_norms(inverse(grad)).linf;
  const double annihilated = lebesgue_norms(inverse(leray(grad))).linf;
  add_le(out, "annihilates_gradients", "Leray projector", annihilated,
         1e-12 * gscale);

  SpectralField u = leray(random_band_field(g, 2, 6.0, 12));
  add_le(out, "fixes_divergence_free", "Leray projector",
         lebesgue_norms(inverse(leray(u) - u)).linf,
         1e-12 * lebesgue_norms(inverse(u)).linf);
  add_le(out, "projection_divergence", "Leray projector",
         relative_divergence(leray(random_band_field(g, 2, 6.0, 13))), 1e-12);

  // commutes with every block on mean-free fields
  SpectralField v = random_band_field(g, 2, 6.0, 14);
  v.comp(0)[0] = 0;
  v.comp(1)[0] = 0;
  double worst = 0, scale = lebesgue_norms(inverse(v)).linf;
  for (int j = -1; j <= 4; ++j) {
    SpectralField a = leray(fb.block(v, j));
    SpectralField b = fb.block(leray(v), j);
    worst = std::max(worst, lebesgue_norms(inverse(a - b)).linf);
  }
  add_le(out, "commutes_with_blocks", "Leray projector", worst, 1e-12 * scale);

  // homogeneity degree 0: F^s ratio invariant under the dyadic relabeling
  // xi -> 2 xi (same coefficients on the half-period grid)
  SpectralField w(g, 2);
  for (int c = 0; c < 2; ++c)
    for (int p1 = 0; p1 < g.n; ++p1)
      for (int p2 = 0; p2 < g.n; ++p2) {
        const double r = std::hypot(g.freq(p1), g.freq(p2));
        if (r > 1.0 && r < 8.0) w.at(c, p1, p2) = v.at(c, p1, p2);
      }
  const TorusGrid g2 = make_grid(g.n, g.period / 2);
  SpectralField w2(g2, 2);
  w2.raw() = w.raw();
  FilterBank fb2(g2, default_j_max(g2));
  const double r1 = tl_norm(leray(w), fb, 3.0, true) / tl_norm(w, fb, 3.0, true);
  const double r2 =
      tl_norm(leray(w2), fb2, 3.0, true) / tl_norm(w2, fb2, 3.0, true);
  add_le(out, "dilation_invariance", "Leray projector",
         std::abs(r1 - r2) / r2, 1e-10);
}

void suite_bony(SuiteResult& out, const RunConfig&) {
  const TorusGrid g = make_grid(256, 16 * kPi);
  FilterBank fb(g, default_j_max(g));
  CounterexampleSpec spec = CounterexampleSpec::grid_adapted(3);
  SpectralField u0 = build_u0(spec, g);
  SpectralField u0c(g, 1);
  for (std::size_t i = 0; i < g.size(); ++i) u0c.comp(0)[i] = u0.comp(0)[i];

  std::vector<std::pair<std::string, SpectralField>> corpus;
  corpus.emplace_back("u0_component", u0c);
  corpus.emplace_back("band_noise", random_band_field(g, 1, 5.0, 21));
  corpus.emplace_back("single_bump", build_bump(3, spec, g).to_field());
  double worst = 0;
  for (auto& [name, f] : corpus)
    for (auto& [name2, h] : corpus) {
      BonySplit b = bony(f, h, fb);
      worst = std::max(worst, b.identity_residual);
    }
  add_le(out, "paraproduct_identity", "paraproduct decomposition", worst,
         1e-10);

  // single-shell pair: both paraproducts vanish, remainder carries all
  SpectralField a3 = build_bump(3, spec, g).to_field();
  BonySplit b = bony(a3, a3, fb);
  const double scale =
      std::max(lebesgue_norms(inverse(dealiased_product(a3, a3))).linf,
               1e-300);
  add_le(out, "same_shell_in_remainder", "paraproduct decomposition",
         (lebesgue_norms(inverse(b.low_high)).linf +
          lebesgue_norms(inverse(b.high_low)).linf) /
             scale,
         1e-12);
}

void suite_shellbound(SuiteResult& out, const RunConfig& cfg) {
  const TorusGrid g = cfg.make_torus();
  CounterexampleSpec spec = cfg.cex_spec();
  FilterBank fb(g, default_j_max(g));
  SpectralField u0 = build_u0(spec, g);
  ShellBoundReport rep = shell_bound_report(u0, u0, fb, spec.s, 3, spec.k_max);
  add(out, "convective_shell_slope", "convective shell decay", rep.slope, 0.3,
      std::abs(rep.slope - (1.0 - spec.s)) <= 0.3,
      "log2 block-L1 slope vs k, expected near 1-s");
  double lo = 1e300, hi = 0;
  for (double m : rep.m_k) {
    lo = std::min(lo, m);
    hi = std::max(hi, m);
  }
  add_le(out, "shell_bound_spread", "convective shell decay",
         hi / std::max(lo, 1e-300), 10.0);
}

void suite_supports(SuiteResult& out, const RunConfig& cfg) {
  for (auto variant : {BumpVariant::faithful, BumpVariant::grid_adapted}) {
    CounterexampleSpec spec =
        variant == BumpVariant::faithful
            ? CounterexampleSpec::faithful(std::max(5, cfg.cex.k_max))
            : CounterexampleSpec::grid_adapted(std::max(5, cfg.cex.k_max));
    int bad = 0;
    for (int k = 3; k <= spec.k_max; ++k)
      if (interaction_table(k, spec).pairs.size() != 3) ++bad;
    add(out,
        variant == BumpVariant::faithful ? "surviving_pairs_faithful"
                                         : "surviving_pairs_grid_adapted",
        "triple support overlap", double(bad), 0.0, bad == 0,
        "pairs != 3 at some k");
  }
}

void suite_mechanism(SuiteResult& out, const RunConfig&) {
  CounterexampleSpec spec = CounterexampleSpec::faithful(13);
  MechanismConstants mc = mechanism_constants(spec, 3, 12);
  double worst_gap = 0;
  for (auto& pk : mc.per_k) worst_gap = std::max(worst_gap, pk.route_gap);
  add_le(out, "two_route_agreement", "inflation mechanism constants",
         worst_gap, 1e-8);
  auto mag = [](const std::array<cplx, 2>& v) {
    return std::hypot(std::abs(v[0]), std::abs(v[1]));
  };
  const double c2_4 = mag(mc.per_k.front().c2_standard);
  const double c2_12 = mag(mc.per_k.back().c2_standard);
  add(out, "c2_decreasing", "inflation mechanism constants", c2_12, c2_4,
      c2_12 < c2_4, "|c2(12)| < |c2(3)|");
  const double ratio = std::abs(mc.c1_paper_pair[1]) /
                       std::abs(mc.c1_paper_pair[0]);
  add_le(out, "paper_pair_component_ratio", "inflation mechanism constants",
         std::abs(ratio - 3.0), 1e-6);
}

void suite_periodization(SuiteResult& out, const RunConfig&) {
  CounterexampleSpec spec = CounterexampleSpec::faithful(3);
  std::vector<TorusGrid> grids = {make_grid(1024, 64 * kPi),
                                  make_grid(2048, 128 * kPi),
                                  make_grid(4096, 256 * kPi)};
  PeriodizationReport rep = periodization_study(spec, grids);
  add(out, "u0_residual_monotone", "torus periodization control",
      rep.rows.back().u0_residual, rep.rows.front().u0_residual,
      rep.residual_monotone, "closed-form residual under dxi halving");
  const double a = rep.rows[rep.rows.size() - 2].a3_l1;
  const double b = rep.rows.back().a3_l1;
  add_le(out, "bump_l1_stable", "torus periodization control",
         std::abs(a - b) / b, 1e-3);

  CounterexampleSpec axis = CounterexampleSpec::faithful(3, 3.0, 0.0);
  PeriodizationReport rep0 = periodization_study(axis, grids);
  double worst = 0;
  for (auto& row : rep0.rows) worst = std::max(worst, row.u0_residual);
  add_le(out, "axis_aligned_exact", "torus periodization control", worst,
         1e-10);
}

}  // namespace

SuiteResult run_suite(const std::string& selector, const RunConfig& cfg) {
  SuiteResult out;
  bool all = selector == "all";
  bool known = all;
  auto want = [&](const char* name) { return all || selector == name; };
  if (want("partition")) known = true, suite_partition(out, cfg);
  if (want("leray")) known = true, suite_leray(out, cfg);
  if (want("bony")) known = true, suite_bony(out, cfg);
  if (want("shellbound")) known = true, suite_shellbound(out, cfg);
  if (want("supports")) known = true, suite_supports(out, cfg);
  if (want("mechanism")) known = true, suite_mechanism(out, cfg);
  if (want("periodization")) known = true, suite_periodization(out, cfg);
  if (!known) throw ConfigError("unknown suite '" + selector + "'");
  return out;
}

json to_json(const SuiteResult& r) {
  json checks = json::array();
  for (const SuiteCheck& c : r.checks)
    checks.push_back({{"name", c.name},
                      {"anchor", c.anchor},
                      {"status", c.pass ? "pass" : "fail"},
                      {"measured", r12(c.measured)},
                      {"tolerance", r12(c.tolerance)},
                      {"note", c.note}});
  return {{"checks", checks}, {"all_pass", r.all_pass()}};
}

}  // namespace lp
