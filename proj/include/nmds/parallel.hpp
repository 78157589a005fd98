#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace nmds {

/// Splits [0, count) into `jobs` contiguous chunks and runs body(worker, begin, end)
/// on each, one thread per chunk. jobs <= 1 runs inline.
template <typename Body>
void parallel_chunks(int jobs, std::size_t count, Body&& body) {
  const std::size_t workers = static_cast<std::size_t>(std::max(1, jobs));
  if (workers == 1 || count < 2) {
    body(std::size_t{0}, std::size_t{0}, count);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t step = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = std::min(count, w * step), end = std::min(count, begin + step);
    pool.emplace_back([&body, w, begin, end] { body(w, begin, end); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace nmds
