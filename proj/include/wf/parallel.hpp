#pragma once

#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wf {

// Global switch between the OpenMP kernels and the serial reference path.
// Thread count 1 forces the serial path (used for golden files and for the
// serial-vs-parallel equivalence tests).
void set_num_threads(int n);
int num_threads();

/// Parallel loop over [0, n). The body must only write state owned by its
/// own index; result ordering is then independent of the thread count.
template <typename F>
void parallel_for(long n, F&& body) {
#ifdef _OPENMP
  if (num_threads() != 1) {
#pragma omp parallel for schedule(dynamic, 16) num_threads(num_threads())
    for (long i = 0; i < n; ++i) body(i);
    return;
  }
#endif
  for (long i = 0; i < n; ++i) body(i);
}

template <typename F>
void parallel_for(long begin, long end, F&& body) {
#ifdef _OPENMP
  if (num_threads() != 1) {
#pragma omp parallel for schedule(dynamic, 16) num_threads(num_threads())
    for (long i = begin; i < end; ++i) body(i);
    return;
  }
#endif
  for (long i = begin; i < end; ++i) body(i);
}

/// Serial reference loop, kept for testing against the parallel kernels.
template <typename F>
void serial_for(long n, F&& body) {
  for (long i = 0; i < n; ++i) body(i);
}

template <typename F>
void serial_for(long begin, long end, F&& body) {
  for (long i = begin; i < end; ++i) body(i);
}

}  // namespace wf
