#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace cfs {

// Runs fn(begin, end) over contiguous chunks of [0, n). Results must be
// written to per-index slots so the output is identical for any thread
// count.
template <typename Fn>
void parallel_chunks(size_t n, int threads, Fn&& fn) {
  if (threads <= 1 || n < 2048) {
    fn(size_t{0}, n);
    return;
  }
  size_t workers = std::min<size_t>(threads, n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  size_t chunk = (n + workers - 1) / workers;
  for (size_t w = 0; w < workers; ++w) {
    size_t begin = w * chunk;
    size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace cfs
