#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace rcbound {

// Runs fn(0..count-1) across up to `jobs` threads (serial when jobs <= 1).
// Callers write results into per-index slots, so scheduling never affects
// output. The first exception thrown by any index is rethrown to the caller.
inline void parallel_for(int jobs, std::int64_t count,
                         const std::function<void(std::int64_t)>& fn) {
  if (count <= 0) return;
  if (jobs <= 1 || count == 1) {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const int workers = int(std::min<std::int64_t>(jobs, count));
  std::atomic<std::int64_t> next{0};
  std::exception_ptr first_error;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  pool.reserve(std::size_t(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::int64_t i = next.fetch_add(1);
        if (i >= count || failed.load()) return;
        try {
          fn(i);
        } catch (...) {
          if (!failed.exchange(true)) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace rcbound
