#pragma once

#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace ideolab {

// Runs fn(i) for i in [0, n). Work units must be independent: each writes
// only its own slot of any shared output, so results never depend on the
// thread count. The first exception thrown by any unit is rethrown.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t n_threads, Fn&& fn) {
  if (n == 0) return;
  if (n_threads == 0) n_threads = 1;
  if (n_threads > n) n_threads = n;
  if (n_threads == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(n_threads);
  const std::size_t chunk = (n + n_threads - 1) / n_threads;
  for (std::size_t t = 0; t < n_threads; ++t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = begin + chunk < n ? begin + chunk : n;
    if (begin >= end) break;
    workers.emplace_back([&, t, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace ideolab
