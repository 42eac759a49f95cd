#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace gospace {

inline std::size_t resolve_jobs(std::size_t jobs) {
  if (jobs > 0) return jobs;
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

/// Runs body(i) for i in [0, n) on `jobs` threads. Results are written by the
/// body into index-addressed storage, so the merge order is the index order.
inline void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& body) {
  jobs = std::min(resolve_jobs(jobs), std::max<std::size_t>(n, 1));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < jobs; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

/// Smallest i in [0, n) with fails(i), evaluated in parallel. Every index below
/// the returned one is evaluated, so the answer does not depend on scheduling.
/// Returns n when nothing fails.
inline std::size_t parallel_first_failure(std::size_t n, std::size_t jobs,
                                          const std::function<bool(std::size_t)>& fails) {
  std::atomic<std::size_t> best{n};
  parallel_for(n, jobs, [&](std::size_t i) {
    if (i >= best.load()) return;
    if (!fails(i)) return;
    std::size_t cur = best.load();
    while (i < cur && !best.compare_exchange_weak(cur, i)) {
    }
  });
  return best.load();
}

}  // namespace gospace
