#pragma once

// Minimal OpenMP loop helper shared by the slice drivers.

#include <cstddef>
#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cdga {

/// Runs body(i) for i in [0, n); the first exception is rethrown on the caller.
template <class Body>
inline void parallel_for(std::size_t n, int threads, Body&& body) {
#ifdef _OPENMP
  if (threads != 1 && n > 1) {
    const int nt = threads > 0 ? threads : omp_get_max_threads();
    std::exception_ptr error;
    std::mutex error_mutex;
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
    for (long i = 0; i < static_cast<long>(n); ++i) {
      try {
        body(static_cast<std::size_t>(i));
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);
    return;
  }
#else
  (void)threads;
#endif
  for (std::size_t i = 0; i < n; ++i) body(i);
}

}  // namespace cdga
