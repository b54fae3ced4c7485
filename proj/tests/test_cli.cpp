#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <filesystem>

#include "doctest.h"
#include "lp/config.hpp"
#include "lp/io.hpp"
#include "lp/suites.hpp"
#include "lp/svg.hpp"

using namespace lp;
namespace fs = std::filesystem;

namespace {
fs::path tmpdir() {
  fs::path p = fs::temp_directory_path() / "lp_test_io";
  fs::create_directories(p);
  return p;
}
}  // namespace

TEST_CASE("LPF1 round trip") {
  TorusGrid g = make_grid(32, 16 * kPi);
  SpectralField f(g, 2);
  std::size_t i = 0;
  for (auto& v : f.raw()) v = cplx(double(i++), -0.5 * double(i));
  fs::path p = tmpdir() / "f.lpf1";
  write_lpf1(p.string(), f, json{{"op", "test"}});
  SpectralField back = read_lpf1_spectral(p.string());
  CHECK(back.grid().n == 32);
  CHECK(back.grid().period == g.period);
  CHECK(back.ncomp() == 2);
  for (std::size_t k = 0; k < f.raw().size(); ++k)
    CHECK(back.raw()[k] == f.raw()[k]);
  CHECK(fs::exists(p.string() + ".meta.json"));
  json meta = json::parse(read_text(p.string() + ".meta.json"));
  CHECK(meta["domain"] == "spectral");
  CHECK(meta["provenance"]["op"] == "test");

  // wrong domain accessor fails
  CHECK_THROWS(read_lpf1_real(p.string()));

  RealField r(g, 1);
  for (auto& v : r.raw()) v = 1.5;
  fs::path q = tmpdir() / "r.lpf1";
  write_lpf1(q.string(), r, json{{"op", "test"}});
  RealField back_r = read_lpf1_real(q.string());
  CHECK(back_r.raw()[5] == cplx(1.5, 0.0));
}

TEST_CASE("config parsing") {
  json j = {{"grid", {{"N", 512}, {"L", 16 * kPi}}},
            {"counterexample", {{"variant", "grid-adapted"}, {"k_max", 3}}},
            {"simulation", {{"T1", 0.25}, {"cadence", 2}}}};
  RunConfig c = RunConfig::from_json(j);
  CHECK(c.grid.n == 512);
  CHECK(c.cex.k_max == 3);
  CHECK(*c.sim.t1 == 0.25);
  CHECK(c.tracked_list() == std::vector<int>{2, 3});
  // defaults echoed
  json echo = c.to_json();
  CHECK(echo["counterexample"]["delta"].get<double>() == 0.25);
  CHECK(echo["counterexample"]["rho"].get<double>() == 0.5);
  CHECK(echo["output"]["directory"] == "out");

  // unknown keys rejected with a clear path
  json bad = j;
  bad["grid"]["M"] = 3;
  CHECK_THROWS_WITH_AS(RunConfig::from_json(bad),
                       doctest::Contains("unknown key 'M'"), ConfigError);
  json bad2 = j;
  bad2["typo"] = 1;
  CHECK_THROWS_AS(RunConfig::from_json(bad2), ConfigError);

  // malformed document
  fs::path p = tmpdir() / "broken.json";
  write_text(p.string(), "{ not json");
  CHECK_THROWS_AS(RunConfig::from_file(p.string()), ConfigError);

  // invalid values funnel into ConfigError (exit code 2 in the tool)
  json badgrid = j;
  badgrid["grid"]["N"] = 1000;
  CHECK_THROWS_AS(RunConfig::from_json(badgrid), ConfigError);
  json badvar = j;
  badvar["counterexample"]["variant"] = "sideways";
  CHECK_THROWS_AS(RunConfig::from_json(badvar), ConfigError);
}

TEST_CASE("serialization helpers") {
  CHECK(fmt_g12(0.125) == "0.125");
  CHECK(fmt_g12(-3.0) == "-3");
  CHECK(r12(1.0 / 3.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-11));

  ShellBoundReport r;
  r.k = {3, 4};
  r.block_l1 = {1.5, 0.75};
  r.m_k = {0.3, 0.2};
  const std::string csv = shell_bound_csv(r);
  CHECK(csv == "k,block_l1,m_k\n3,1.5,0.3\n4,0.75,0.2\n");
}

TEST_CASE("SVG output is deterministic") {
  std::vector<Series> s = {{"a", {0, 1, 2}, {1.0, 4.0, 2.0}},
                           {"b", {0, 1, 2}, {2.0, 3.0, 1.0}}};
  const std::string one = line_chart_svg("title", "t", "value", s);
  const std::string two = line_chart_svg("title", "t", "value", s);
  CHECK(one == two);
  CHECK(one.find("<svg") != std::string::npos);
  CHECK(one.find("viewBox='0 0 800 500'") != std::string::npos);
  CHECK(one.find("polyline") != std::string::npos);

  const std::string bars =
      bar_chart_svg("d", "k_max", "D", {"3", "4", "5"}, {1.0, 2.0, 3.0});
  CHECK(bars.find("rect") != std::string::npos);
  CHECK(bars == bar_chart_svg("d", "k_max", "D", {"3", "4", "5"},
                              {1.0, 2.0, 3.0}));
}

TEST_CASE("support suite runs green on defaults") {
  RunConfig cfg;
  cfg.grid.n = 512;  // keep the check light
  SuiteResult r = run_suite("supports", cfg);
  CHECK(r.all_pass());
  CHECK(r.checks.size() == 2);
  json j = to_json(r);
  CHECK(j["all_pass"].get<bool>());
  CHECK_THROWS_AS(run_suite("nonsense", cfg), ConfigError);
}
