// Acceptance suite: one line per criterion, nonzero exit on any failure.
// --static runs the construction/operator criteria, --dynamic the
// simulation criteria, --all (default) both.
#include <cstdio>
#include <cstring>

#include "lp/analysis.hpp"
#include "lp/counterexample.hpp"
#include "lp/io.hpp"
#include "lp/suites.hpp"

int main(int argc, char** argv) {
  bool run_static = true, run_dynamic = true;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--static")) run_dynamic = false;
    if (!std::strcmp(argv[i], "--dynamic")) run_static = false;
  }
  (void)run_static;
  (void)run_dynamic;
  std::puts("acceptance suite not yet wired");
  return 1;
}
