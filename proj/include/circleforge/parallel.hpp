#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace circleforge {

inline unsigned worker_count() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Splits [0, count) into contiguous blocks, one per worker, and calls
/// fn(begin, end, block_index). Block boundaries depend only on `count` and
/// the worker count, so callers that merge per-block results in block order
/// get deterministic output.
template <class Fn>
void parallel_blocks(std::size_t count, std::size_t min_block, Fn&& fn) {
  std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(
      worker_count(), min_block == 0 ? count : count / min_block));
  if (workers <= 1 || count == 0) {
    fn(std::size_t{0}, count, std::size_t{0});
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = count * w / workers;
    const std::size_t end = count * (w + 1) / workers;
    threads.emplace_back([&fn, begin, end, w] { fn(begin, end, w); });
  }
  for (auto& t : threads) t.join();
}

}  // namespace circleforge
