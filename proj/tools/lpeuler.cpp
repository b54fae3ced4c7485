// Command-line front end: build | verify | simulate | analyze | plot
#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "lp/analysis.hpp"
#include "lp/config.hpp"
#include "lp/io.hpp"
#include "lp/suites.hpp"
#include "lp/svg.hpp"

namespace fs = std::filesystem;
using lp::json;

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  int threads = 0;
  std::string plan = "measure";
};

lp::RunConfig load_config(const CommonOpts& o) {
  lp::RunConfig cfg = o.config_path.empty()
                          ? lp::RunConfig{}
                          : lp::RunConfig::from_file(o.config_path);
  return cfg;
}

fs::path resolve_out(const CommonOpts& o, const lp::RunConfig& cfg) {
  if (!o.out_dir.empty()) return o.out_dir;
  fs::path dir = cfg.output.directory;
  if (dir.is_relative()) {
    if (const char* root = std::getenv("LP_OUT_DIR")) dir = fs::path(root) / dir;
  }
  return dir;
}

void apply_common(const CommonOpts& o) {
  if (o.threads > 0) lp::set_threads(o.threads);
  lp::set_fft_planning(o.plan == "estimate" ? lp::FftPlanning::estimate
                                            : lp::FftPlanning::measure);
}

void write_echo(const fs::path& dir, const lp::RunConfig& cfg) {
  lp::write_text((dir / "config.json").string(), cfg.to_json().dump(2) + "\n");
}

int cmd_build(const CommonOpts& o) {
  apply_common(o);
  lp::RunConfig cfg = load_config(o);
  fs::path dir = resolve_out(o, cfg);
  fs::create_directories(dir);
  write_echo(dir, cfg);

  lp::TorusGrid g = cfg.make_torus();
  lp::CounterexampleSpec spec = cfg.cex_spec();
  if (spec.variant == lp::BumpVariant::faithful && spec.rho < 4 * g.dxi)
    std::cerr << "warning: faithful low bump (rho=" << spec.rho
              << ") is below 4 lattice cells on this grid; global-grid "
                 "fields will undersample it\n";

  lp::SparseSpectrum alpha = lp::build_alpha(spec, g);
  lp::write_text((dir / "alpha_sparse.json").string(),
                 lp::sparse_to_json(alpha).dump() + "\n");
  lp::SpectralField u0 = lp::build_u0(spec, g);
  json prov = {{"op", "build_u0"}, {"config", cfg.to_json()}};
  lp::write_lpf1((dir / "u0.lpf1").string(), u0, prov);

  lp::FilterBank fb(g, lp::default_j_max(g));
  lp::NormReport nr = lp::norm_report(u0, fb, spec.s);
  lp::write_text((dir / "norms.json").string(), lp::to_json(nr).dump(2) + "\n");
  std::cout << "build: wrote u0.lpf1, alpha_sparse.json, norms.json in "
            << dir.string() << "\n";
  return 0;
}

int cmd_verify(const CommonOpts& o, const std::string& suite) {
  apply_common(o);
  lp::RunConfig cfg = load_config(o);
  fs::path dir = resolve_out(o, cfg);
  fs::create_directories(dir);
  lp::SuiteResult res = lp::run_suite(suite, cfg);
  lp::write_text((dir / "suite.json").string(),
                 lp::to_json(res).dump(2) + "\n");
  for (const lp::SuiteCheck& c : res.checks)
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << " [" << c.anchor
              << "] measured=" << lp::fmt_g12(c.measured)
              << " tol=" << lp::fmt_g12(c.tolerance) << "\n";
  return res.all_pass() ? 0 : 1;
}

lp::SimulationConfig sim_config(const lp::RunConfig& cfg,
                                const lp::SpectralField& u0,
                                const lp::CounterexampleSpec& spec,
                                const lp::TorusGrid& g) {
  lp::SimulationConfig sc;
  sc.grid = g;
  sc.s = spec.s;
  const double t1 = cfg.sim.t1 ? *cfg.sim.t1 : 0.1 / lp::w1inf_norm(u0);
  const double dt = cfg.sim.dt ? *cfg.sim.dt : t1 / 192.0;
  sc.steps = std::max(1, int(std::lround(t1 / dt)));
  sc.dt = dt;
  sc.sample_every = cfg.sim.cadence;
  sc.epsilons = cfg.sim.epsilons;
  for (int k : cfg.tracked_list()) {
    auto xi = spec.xi_point(k);
    sc.tracked_k.push_back(k);
    sc.tracked_points.push_back(lp::nearest_lattice(g, xi[0], xi[1]));
  }
  for (int d : cfg.sim.snapshot_denoms) {
    int step = sc.steps / d;
    if (step >= 1 &&
        std::find(sc.snapshot_steps.begin(), sc.snapshot_steps.end(), step) ==
            sc.snapshot_steps.end())
      sc.snapshot_steps.push_back(step);
  }
  std::sort(sc.snapshot_steps.begin(), sc.snapshot_steps.end());
  sc.keep_final_state = true;
  return sc;
}

int run_one_simulation(const lp::RunConfig& cfg, const fs::path& dir) {
  fs::create_directories(dir);
  write_echo(dir, cfg);
  lp::TorusGrid g = cfg.make_torus();
  lp::CounterexampleSpec spec = cfg.cex_spec();
  lp::SpectralField u0 = lp::build_u0(spec, g);
  lp::SimulationConfig sc = sim_config(cfg, u0, spec, g);
  lp::TraceRecord trace = lp::simulate(sc, u0);
  lp::write_text((dir / "trace.csv").string(), lp::trace_csv(trace));
  json summary = lp::trace_summary(trace);
  // oracle drift prediction per tracked k, for the analyze step
  lp::SparseSpectrum alpha = lp::build_alpha(spec, g);
  json preds = json::array();
  for (std::size_t i = 0; i < sc.tracked_k.size(); ++i) {
    auto v = lp::grid_projected_oracle(alpha, sc.tracked_points[i]);
    const double mag = std::hypot(std::abs(v[0]), std::abs(v[1]));
    preds.push_back(
        lp::r12(std::pow(2.0, sc.tracked_k[i] * sc.s) * mag));
  }
  summary["drift_prediction"] = preds;
  lp::write_text((dir / "summary.json").string(), summary.dump(2) + "\n");
  json prov = {{"op", "simulate"}, {"t_final", sc.steps * sc.dt}};
  lp::write_lpf1((dir / "u_final.lpf1").string(), trace.final_state, prov);
  std::cout << "simulate: " << sc.steps << " steps on " << g.n << "^2, wrote "
            << (dir / "trace.csv").string() << "\n";
  return 0;
}

int cmd_simulate(const CommonOpts& o, const std::vector<int>& kmax_sweep) {
  apply_common(o);
  lp::RunConfig cfg = load_config(o);
  fs::path dir = resolve_out(o, cfg);
  if (kmax_sweep.empty()) return run_one_simulation(cfg, dir);
  for (int km : kmax_sweep) {
    lp::RunConfig c2 = cfg;
    c2.cex.k_max = km;
    c2.sim.tracked_k.clear();
    for (int k = 2; k <= km; ++k) c2.sim.tracked_k.push_back(k);
    int rc = run_one_simulation(c2, dir / ("kmax" + std::to_string(km)));
    if (rc != 0) return rc;
  }
  return 0;
}

// minimal CSV reader for our own trace files
struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

Csv read_csv(const std::string& path) {
  std::string text = lp::read_text(path);
  Csv out;
  std::size_t pos = 0;
  bool first = true;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::size_t c = 0;
    while (true) {
      std::size_t comma = line.find(',', c);
      cells.push_back(line.substr(c, comma - c));
      if (comma == std::string::npos) break;
      c = comma + 1;
    }
    if (first) {
      out.header = cells;
      first = false;
    } else {
      std::vector<double> row;
      for (auto& s : cells) row.push_back(std::strtod(s.c_str(), nullptr));
      out.rows.push_back(row);
    }
  }
  return out;
}

int col_index(const Csv& csv, const std::string& name) {
  for (std::size_t i = 0; i < csv.header.size(); ++i)
    if (csv.header[i] == name) return int(i);
  throw std::runtime_error("trace.csv: missing column " + name);
}

int analyze_one(const fs::path& dir) {
  lp::RunConfig cfg = lp::RunConfig::from_file((dir / "config.json").string());
  json summary = json::parse(lp::read_text((dir / "summary.json").string()));
  Csv csv = read_csv((dir / "trace.csv").string());

  // rebuild a TraceRecord skeleton from the files
  lp::TraceRecord trace;
  trace.config.s = cfg.cex.s;
  trace.config.dt = summary["dt"].get<double>();
  trace.config.steps = summary["steps"].get<int>();
  trace.config.tracked_k = cfg.tracked_list();
  const int tcol = col_index(csv, "t");
  const int ncol = col_index(csv, "weak_n");
  for (auto& row : csv.rows) {
    lp::TraceRow r;
    r.t = row[tcol];
    for (int k : trace.config.tracked_k) {
      const std::string suffix = "_k" + std::to_string(k);
      r.uhat1.push_back(lp::cplx(row[col_index(csv, "u1_re" + suffix)],
                                 row[col_index(csv, "u1_im" + suffix)]));
      r.uhat2.push_back(lp::cplx(row[col_index(csv, "u2_re" + suffix)],
                                 row[col_index(csv, "u2_im" + suffix)]));
    }
    r.weak_n = row[ncol];
    trace.rows.push_back(r);
  }
  for (auto& d : summary["diff_norms"]) {
    lp::DiffNormRow r;
    r.t1 = d["t1"].get<double>();
    r.t2 = d["t2"].get<double>();
    r.f_s = d["f_s"].get<double>();
    r.f_s_half = d["f_s_half"].get<double>();
    r.f_s_one = d["f_s_one"].get<double>();
    r.argmax_shell = d["argmax_shell"].get<int>();
    trace.diffs.push_back(r);
  }

  std::vector<double> preds;
  for (auto& p : summary["drift_prediction"]) preds.push_back(p.get<double>());
  const double t_final = trace.config.steps * trace.config.dt;
  lp::InflationAnalysis infl =
      lp::inflation_analysis(trace, cfg.cex.s, t_final / 16.0, preds);
  json ji;
  ji["t_fit"] = lp::r12(infl.t_fit);
  ji["fit_samples"] = infl.fit_samples;
  json per = json::array();
  for (auto& pk : infl.per_k)
    per.push_back({{"k", pk.k},
                   {"g0", lp::r12(pk.g0)},
                   {"sigma", lp::r12(pk.sigma)},
                   {"prediction", lp::r12(pk.prediction)},
                   {"rel_err", lp::r12(pk.rel_err)}});
  ji["per_k"] = per;
  json ratios = json::array();
  for (double r : infl.ratios) ratios.push_back(lp::r12(r));
  ji["sigma_ratios"] = ratios;
  lp::write_text((dir / "inflation.json").string(), ji.dump(2) + "\n");

  lp::ContinuityReport cont = lp::continuity_report(trace);
  json jc;
  jc["lipschitz_rate"] = lp::r12(cont.lipschitz_rate);
  jc["lipschitz_residual"] = lp::r12(cont.lipschitz_residual);
  json dy = json::array();
  for (auto& [t, v] : cont.dyadic) dy.push_back({lp::r12(t), lp::r12(v)});
  jc["dyadic_f_s_half"] = dy;
  jc["monotone"] = cont.monotone;
  lp::JumpReport jumps = lp::weak_jump_report(trace);
  jc["weak_jump_fine"] = lp::r12(jumps.max_jump_fine);
  jc["weak_jump_coarse"] = lp::r12(jumps.max_jump_coarse);
  lp::write_text((dir / "continuity.json").string(), jc.dump(2) + "\n");
  std::cout << "analyze: wrote inflation.json, continuity.json in "
            << dir.string() << "\n";
  return 0;
}

int cmd_analyze(const CommonOpts& o) {
  apply_common(o);
  lp::RunConfig cfg = load_config(o);
  fs::path dir = resolve_out(o, cfg);
  std::vector<fs::path> sweeps;
  for (int km = 1; km <= 16; ++km) {
    fs::path p = dir / ("kmax" + std::to_string(km));
    if (fs::exists(p / "summary.json")) sweeps.push_back(p);
  }
  if (sweeps.empty()) return analyze_one(dir);

  json rows = json::array();
  for (auto& p : sweeps) {
    analyze_one(p);
    json summary = json::parse(lp::read_text((p / "summary.json").string()));
    // D(t*) at the earliest snapshot >= steps/4
    const double t_final = summary["t_final"].get<double>();
    double best_t = -1, best_d = 0;
    int arg = -2;
    for (auto& d : summary["diff_norms"]) {
      if (d["t1"].get<double>() != 0.0) continue;
      const double t2 = d["t2"].get<double>();
      if (std::abs(t2 - t_final / 4) <
          std::abs(best_t - t_final / 4)) {
        best_t = t2;
        best_d = d["f_s"].get<double>();
        arg = d["argmax_shell"].get<int>();
      }
    }
    lp::RunConfig c = lp::RunConfig::from_file((p / "config.json").string());
    rows.push_back({{"k_max", c.cex.k_max},
                    {"t_star", lp::r12(best_t)},
                    {"d_fs", lp::r12(best_d)},
                    {"argmax_shell", arg}});
  }
  bool increasing = true;
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i]["d_fs"].get<double>() <= rows[i - 1]["d_fs"].get<double>())
      increasing = false;
  json out = {{"rows", rows}, {"strictly_increasing", increasing}};
  lp::write_text((dir / "discontinuity.json").string(), out.dump(2) + "\n");
  std::cout << "analyze: wrote discontinuity.json in " << dir.string() << "\n";
  return 0;
}

int cmd_plot(const std::string& csv_path, const std::string& kind,
             const std::string& out_path) {
  Csv csv = read_csv(csv_path);
  std::vector<lp::Series> series;
  const int tcol = col_index(csv, "t");
  auto column = [&](int idx) {
    std::vector<double> v;
    for (auto& r : csv.rows) v.push_back(r[idx]);
    return v;
  };
  std::vector<double> t = column(tcol);
  std::string svg;
  if (kind == "inflation") {
    for (std::size_t i = 0; i < csv.header.size(); ++i)
      if (csv.header[i].rfind("abs_k", 0) == 0)
        series.push_back({csv.header[i], t, column(int(i))});
    svg = lp::line_chart_svg("tracked coefficient magnitudes", "t",
                             "|u-hat(xi~k, t)|", series);
  } else if (kind == "norms") {
    for (std::size_t i = 0; i < csv.header.size(); ++i)
      if (csv.header[i].rfind("weak_n", 0) == 0 ||
          csv.header[i] == "energy")
        series.push_back({csv.header[i], t, column(int(i))});
    svg = lp::line_chart_svg("norm traces", "t", "value", series);
  } else if (kind == "dsweep") {
    // expects columns k_max, d_fs
    std::vector<std::string> labels;
    std::vector<double> values;
    const int kcol = col_index(csv, "k_max");
    const int dcol = col_index(csv, "d_fs");
    for (auto& r : csv.rows) {
      labels.push_back("k_max=" + std::to_string(int(r[kcol])));
      values.push_back(r[dcol]);
    }
    svg = lp::bar_chart_svg("norm jump vs truncation", "k_max",
                            "|u(t*) - u0|_{F^s}", labels, values);
  } else {
    throw lp::ConfigError("unknown plot kind '" + kind + "'");
  }
  lp::write_text(out_path, svg);
  std::cout << "plot: wrote " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dyadic-analysis toolkit and 2-D incompressible Euler lab"};
  app.require_subcommand(1);
  CommonOpts common;
  app.add_option("--config", common.config_path, "JSON config path");
  app.add_option("--out", common.out_dir, "output directory");
  app.add_option("--threads", common.threads, "worker thread count");
  app.add_option("--plan", common.plan, "fft planning: measure|estimate");

  auto* build = app.add_subcommand("build", "construct u0 and its spectra");
  auto* verify = app.add_subcommand("verify", "run verification suites");
  std::string suite = "all";
  verify->add_option("--suite", suite, "suite selector");
  auto* simulate = app.add_subcommand("simulate", "integrate the Euler flow");
  std::vector<int> kmax_sweep;
  simulate->add_option("--kmax-sweep", kmax_sweep,
                       "run once per k_max value")
      ->delimiter(',');
  auto* analyze = app.add_subcommand("analyze", "post-process a run directory");
  auto* plot = app.add_subcommand("plot", "emit an SVG chart from a CSV");
  std::string csv_path, kind = "inflation", out_path = "plot.svg";
  plot->add_option("--csv", csv_path, "input CSV")->required();
  plot->add_option("--kind", kind, "inflation|norms|dsweep");
  plot->add_option("--svg", out_path, "output SVG path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (build->parsed()) return cmd_build(common);
    if (verify->parsed()) return cmd_verify(common, suite);
    if (simulate->parsed()) return cmd_simulate(common, kmax_sweep);
    if (analyze->parsed()) return cmd_analyze(common);
    if (plot->parsed()) return cmd_plot(csv_path, kind, out_path);
  } catch (const lp::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
