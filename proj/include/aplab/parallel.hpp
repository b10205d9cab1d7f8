#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace aplab {

// Parallelism cap: AP_LAB_THREADS in the environment, else hardware threads.
inline int thread_cap() {
  if (const char* env = std::getenv("AP_LAB_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// Index-chunked parallel loop; results must be written to per-index slots so
// the outcome is independent of the schedule.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const int threads = std::min<std::size_t>(thread_cap(), n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t]() {
      for (std::size_t i = t; i < n; i += threads) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace aplab
