#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace wpdet {

/// Worker count used by the data-parallel scans; 0 means hardware concurrency.
void set_thread_count(unsigned n);
unsigned thread_count();

/// Calls body(worker, i) for i in [0, n). Indices are handed out dynamically,
/// so body must only touch per-worker or per-index state. The first
/// exception thrown by any worker is rethrown after all workers join.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(thread_count(), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(0U, i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&](unsigned worker) {
    try {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) body(worker, i);
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      next = n;
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run, w);
  run(0);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

/// Number of worker slots parallel_for may use; size per-worker buffers with it.
inline unsigned worker_slots(std::size_t n) {
  return static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(thread_count(), n)));
}

}  // namespace wpdet
