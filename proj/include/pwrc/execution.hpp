#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

#include <omp.h>

namespace pwrc {

// Selects between the serial reference loop and the OpenMP loop. Both run the
// same per-item body, so results are bitwise identical.
enum class Execution { kSerial, kParallel };

// Runs body(i) for i in [0, count). The first exception thrown by any
// iteration is rethrown on the calling thread after the loop completes.
template <typename Body>
void for_each_index(std::size_t count, Execution exec, Body&& body) {
  if (exec == Execution::kSerial || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

inline int max_threads() { return omp_get_max_threads(); }

}  // namespace pwrc
