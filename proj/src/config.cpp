#include "lp/config.hpp"

#include <set>

namespace lp {

namespace {

void check_keys(const json& j, const std::string& where,
                std::set<std::string> allowed) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      throw ConfigError(where + ": unknown key '" + it.key() + "'");
}

template <class T>
void take(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

template <class T>
void take_opt(const json& j, const char* key, std::optional<T>& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

RunConfig RunConfig::from_json(const json& j) {
  RunConfig c;
  check_keys(j, "config", {"grid", "counterexample", "simulation", "output"});
  if (j.contains("grid")) {
    const json& g = j.at("grid");
    check_keys(g, "grid", {"N", "L"});
    take(g, "N", c.grid.n);
    take(g, "L", c.grid.period);
  }
  if (j.contains("counterexample")) {
    const json& x = j.at("counterexample");
    check_keys(x, "counterexample",
               {"variant", "s", "theta", "k_max", "delta", "rho"});
    take(x, "variant", c.cex.variant);
    if (c.cex.variant != "faithful" && c.cex.variant != "grid-adapted")
      throw ConfigError("counterexample.variant must be faithful|grid-adapted");
    take(x, "s", c.cex.s);
    take(x, "theta", c.cex.theta);
    take(x, "k_max", c.cex.k_max);
    take_opt(x, "delta", c.cex.delta);
    take_opt(x, "rho", c.cex.rho);
  }
  if (j.contains("simulation")) {
    const json& s = j.at("simulation");
    check_keys(s, "simulation",
               {"dt", "T1", "cadence", "tracked_k", "epsilons",
                "weak_sequence", "snapshot_denoms"});
    take_opt(s, "dt", c.sim.dt);
    take_opt(s, "T1", c.sim.t1);
    take(s, "cadence", c.sim.cadence);
    take(s, "tracked_k", c.sim.tracked_k);
    take(s, "epsilons", c.sim.epsilons);
    take(s, "weak_sequence", c.sim.weak_sequence);
    take(s, "snapshot_denoms", c.sim.snapshot_denoms);
    if (c.sim.weak_sequence != "geometric")
      throw ConfigError("simulation.weak_sequence: only 'geometric' is defined");
    if (c.sim.cadence < 1) throw ConfigError("simulation.cadence must be >= 1");
  }
  if (j.contains("output")) {
    const json& o = j.at("output");
    check_keys(o, "output", {"directory", "formats"});
    take(o, "directory", c.output.directory);
    take(o, "formats", c.output.formats);
    for (const std::string& f : c.output.formats)
      if (f != "csv" && f != "json" && f != "svg")
        throw ConfigError("output.formats: unknown format '" + f + "'");
  }
  // fail early on grid/spec inconsistencies
  c.make_torus();
  c.cex_spec();
  return c;
}

RunConfig RunConfig::from_file(const std::string& path) {
  json j;
  try {
    j = json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return from_json(j);
}

json RunConfig::to_json() const {
  json j;
  j["grid"] = {{"N", grid.n}, {"L", grid.period}};
  CounterexampleSpec spec = cex_spec();
  j["counterexample"] = {{"variant", cex.variant}, {"s", cex.s},
                         {"theta", cex.theta},     {"k_max", cex.k_max},
                         {"delta", spec.delta},    {"rho", spec.rho}};
  json s;
  if (sim.dt) s["dt"] = *sim.dt;
  if (sim.t1) s["T1"] = *sim.t1;
  s["cadence"] = sim.cadence;
  s["tracked_k"] = tracked_list();
  s["epsilons"] = sim.epsilons;
  s["weak_sequence"] = sim.weak_sequence;
  s["snapshot_denoms"] = sim.snapshot_denoms;
  j["simulation"] = s;
  j["output"] = {{"directory", output.directory}, {"formats", output.formats}};
  return j;
}

TorusGrid RunConfig::make_torus() const {
  try {
    return make_grid(grid.n, grid.period);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("grid: ") + e.what());
  }
}

CounterexampleSpec RunConfig::cex_spec() const {
  try {
    CounterexampleSpec spec =
        cex.variant == "faithful"
            ? CounterexampleSpec::faithful(cex.k_max, cex.s, cex.theta)
            : CounterexampleSpec::grid_adapted(cex.k_max, cex.s, cex.theta);
    if (cex.delta) spec.delta = *cex.delta;
    if (cex.rho) spec.rho = *cex.rho;
    spec.validate();
    return spec;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("counterexample: ") + e.what());
  }
}

std::vector<int> RunConfig::tracked_list() const {
  if (!sim.tracked_k.empty()) return sim.tracked_k;
  std::vector<int> ks;
  for (int k = 2; k <= cex.k_max; ++k) ks.push_back(k);
  return ks;
}

}  // namespace lp
