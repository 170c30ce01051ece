#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace riskcal {

// Number of worker threads: the RISKCAL_THREADS environment variable when it
// parses to a positive integer, otherwise the hardware concurrency (at least
// one). Oversized requests are clamped to 256.
std::size_t worker_count() noexcept;

// Evaluates f(0..n-1) across workers and returns the results in index order,
// so any reduction over the output is deterministic regardless of thread
// count or scheduling. f must be safe to call concurrently on distinct
// indices. The first exception thrown by any worker is rethrown.
template <typename T>
std::vector<T> parallel_map(std::size_t n, const std::function<T(std::size_t)>& f) {
  std::vector<T> out(n);
  const std::size_t workers = std::min(worker_count(), n > 0 ? n : std::size_t{1});
  if (n == 0) return out;
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto run = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        out[i] = f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
  return out;
}

}  // namespace riskcal
