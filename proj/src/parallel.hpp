#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace setnim::detail {

// Runs fn(chunk) for chunk in [0, count) on up to `threads` workers. The
// first exception thrown by any chunk is rethrown after all workers stop.
template <class F>
void run_chunks(std::size_t count, int threads, F&& fn) {
  const auto workers = std::min(static_cast<std::size_t>(std::max(1, threads)), count);
  if (workers <= 1) {
    for (std::size_t c = 0; c < count; ++c) fn(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t c; !failed && (c = next++) < count;) {
        try {
          fn(c);
        } catch (...) {
          if (!failed.exchange(true)) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace setnim::detail
