#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lp/counterexample.hpp"
#include "lp/euler.hpp"
#include "lp/io.hpp"

namespace lp {

// Run configuration document. Parsing is strict: unknown keys are
// rejected, defaults are filled in and echoed back into run metadata.
struct RunConfig {
  struct Grid {
    int n = 2048;
    double period = 16 * kPi;
  } grid;

  struct Cex {
    std::string variant = "grid-adapted";  // or "faithful"
    double s = 3.0;
    double theta = kPi / 6;
    int k_max = 5;
    std::optional<double> delta, rho;  // default depends on the variant
  } cex;

  struct Sim {
    std::optional<double> dt;  // default: T1/192
    std::optional<double> t1;  // default: 0.1 / |u0|_{W^{1,inf}}
    int cadence = 1;           // steps between trace rows
    std::vector<int> tracked_k;          // default 2..k_max
    std::vector<double> epsilons = {0.4, 0.2, 0.1};
    std::string weak_sequence = "geometric";
    std::vector<int> snapshot_denoms = {64, 32, 16, 8, 4, 3, 2, 1};
  } sim;

  struct Output {
    std::string directory = "out";
    std::vector<std::string> formats = {"csv", "json", "svg"};
  } output;

  static RunConfig from_json(const json& j);
  static RunConfig from_file(const std::string& path);
  json to_json() const;

  TorusGrid make_torus() const;
  CounterexampleSpec cex_spec() const;
  std::vector<int> tracked_list() const;
};

// usage/config errors carry exit code 2
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace lp
