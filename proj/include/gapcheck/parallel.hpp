#pragma once

#include <cstddef>
#include <exception>
#include <vector>

namespace gapcheck {

// Runs body(i) for i in [0, n) across OpenMP threads. Exceptions do not cross
// the parallel region; the one thrown by the lowest index is rethrown after
// all iterations finish.
template <typename Body>
void parallel_for(std::size_t n, Body&& body) {
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace gapcheck
