#pragma once

#include <string>
#include <vector>

#include "lp/config.hpp"

namespace lp {

struct SuiteCheck {
  std::string name;
  std::string anchor;  // mathematical object the check pins down
  bool pass = false;
  double measured = 0;
  double tolerance = 0;
  std::string note;
};

struct SuiteResult {
  std::vector<SuiteCheck> checks;
  bool all_pass() const {
    for (const SuiteCheck& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

// selector: partition | leray | bony | shellbound | supports | mechanism |
// periodization | all
SuiteResult run_suite(const std::string& selector, const RunConfig& cfg);

json to_json(const SuiteResult& r);

}  // namespace lp
