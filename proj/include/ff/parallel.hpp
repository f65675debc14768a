#pragma once

#include <functional>
#include <thread>
#include <vector>

namespace ff {

// Run fn(i) for i in [0, n) across `jobs` threads.  Work is split into fixed
// contiguous chunks so the assignment of indices to threads is deterministic;
// callers must keep per-index results independent (merge after the join).
inline void parallel_for(int n, int jobs, const std::function<void(int)>& fn) {
  if (jobs <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  int workers = std::min(jobs, n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int i = w; i < n; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace ff
