#pragma once

#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace capcert {

/// Worker count for data-parallel loops. Controlled by CAPCERT_WORKERS;
/// defaults to 1 so results are reproducible unless parallelism is asked
/// for explicitly. Results are independent of this value by construction:
/// work is split into fixed chunks and merged in chunk order.
inline std::size_t worker_count() {
  if (const char* env = std::getenv("CAPCERT_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<std::size_t>(v);
    if (v == 0) {
      const unsigned hw = std::thread::hardware_concurrency();
      return hw == 0 ? 1 : hw;
    }
  }
  return 1;
}

/// Runs fn(i) for i in [0, count), partitioned into contiguous chunks, one
/// chunk per worker. fn must not depend on execution order across indices.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min(worker_count(), count == 0 ? std::size_t{1} : count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = count * w / workers;
    const std::size_t hi = count * (w + 1) / workers;
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

/// Deterministic map-reduce: map(i) -> T for i in [0, count), then the
/// results are combined strictly in index order with merge(acc, value).
/// Output is byte-identical for every worker count as long as map is a
/// pure function of i.
template <typename T, typename Map, typename Merge>
T parallel_map_reduce(std::size_t count, T init, Map&& map, Merge&& merge) {
  std::vector<T> slots(count);
  parallel_for(count, [&](std::size_t i) { slots[i] = map(i); });
  T acc = std::move(init);
  for (std::size_t i = 0; i < count; ++i) acc = merge(std::move(acc), std::move(slots[i]));
  return acc;
}

}  // namespace capcert
