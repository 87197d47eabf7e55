#include "wf/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wf {

namespace {
int resolve_default() {
  if (const char* env = std::getenv("WF_NUM_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

int g_threads = resolve_default();
}  // namespace

void set_num_threads(int n) { g_threads = n > 0 ? n : resolve_default(); }

int num_threads() { return g_threads; }

}  // namespace wf
