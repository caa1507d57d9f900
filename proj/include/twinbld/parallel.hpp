#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace twinbld {

// Data-parallel loop over [0, n). Results must be written to per-index slots;
// with that discipline the parallel and serial paths produce identical output.
// The serial path is kept as the reference implementation for testing.
template <typename Fn>
void parallel_for(std::size_t n, bool parallel, Fn&& fn) {
  if (!parallel) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < static_cast<long long>(n); ++i)
    fn(static_cast<std::size_t>(i));
#else
  for (std::size_t i = 0; i < n; ++i) fn(i);
#endif
}

inline int hardware_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace twinbld
