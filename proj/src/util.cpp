#include "lp/util.hpp"

#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lp {

std::string fmt_g12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {
int g_threads = 1;
}

void set_threads(int n) {
  if (n < 1) n = 1;
  g_threads = n;
#ifdef _OPENMP
  omp_set_num_threads(n);
#endif
}

int threads() { return g_threads; }

}  // namespace lp
