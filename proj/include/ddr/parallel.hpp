// OpenMP-backed parallel loop over entity indices, with a serial path that is the
// reference for testing: both orders produce the same per-index results, and callers
// that need determinism write into pre-sized per-index slots.

#ifndef DDR_PARALLEL_HPP
#define DDR_PARALLEL_HPP

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ddr
{

  template <typename Fn>
  void parallel_for(int n, int nthreads, Fn && fn)
  {
#ifdef _OPENMP
    if (nthreads > 1) {
#pragma omp parallel for num_threads(nthreads) schedule(dynamic)
      for (int i = 0; i < n; i++) fn(i);
      return;
    }
#else
    (void)nthreads;
#endif
    for (int i = 0; i < n; i++) fn(i);
  }

} // namespace ddr

#endif
