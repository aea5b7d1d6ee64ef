#pragma once

#include <cstdint>
#include <thread>
#include <vector>

namespace c0dynamo {

// Worker cap: C0DYNAMO_THREADS when set (>= 1), else hardware concurrency.
int max_threads();

// Splits [0, count) into contiguous chunks, one worker per chunk:
// fn(begin, end). Falls back to a direct call when a single worker suffices.
template <typename Fn>
void parallel_for(std::int64_t count, Fn&& fn) {
  int workers = max_threads();
  if (count < 1024 || workers <= 1) {
    if (count > 0) fn(std::int64_t(0), count);
    return;
  }
  if (workers > count) workers = static_cast<int>(count);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  const std::int64_t chunk = (count + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const std::int64_t b = w * chunk;
    const std::int64_t e = std::min(count, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&fn, b, e] { fn(b, e); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace c0dynamo
