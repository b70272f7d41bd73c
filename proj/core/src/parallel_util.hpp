#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace nestsolve::internal {

// Runs fn(i) for every i in [0, count), statically partitioned over up to
// `threads` workers (0 = hardware concurrency). Blocks until every call has
// returned; the first exception thrown by fn is rethrown on the caller.
// fn must be safe to call concurrently for distinct i.
inline void parallel_for(std::int64_t count, int threads,
                         const std::function<void(std::int64_t)>& fn) {
  if (count <= 0) return;
  std::int64_t workers =
      threads > 0 ? threads : static_cast<std::int64_t>(std::thread::hardware_concurrency());
  workers = std::max<std::int64_t>(1, std::min(workers, count));
  if (workers == 1) {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    const std::int64_t begin = count * w / workers;
    const std::int64_t end = count * (w + 1) / workers;
    pool.emplace_back([&fn, &errors, w, begin, end] {
      try {
        for (std::int64_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace nestsolve::internal
