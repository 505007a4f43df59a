#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace lns::detail {

inline constexpr std::size_t kParallelGrain = 4096;

/// Number of chunks a reduction over `items` is split into. Deterministic
/// mode always uses one chunk, which makes every fold a sequential left fold.
inline unsigned chunk_count(std::size_t items, bool deterministic) {
  if (deterministic || items < 2 * kParallelGrain) return 1;
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(hw, items / kParallelGrain));
}

/// Calls fn(chunk, begin, end) for `chunks` contiguous slices of [0, items),
/// chunk 0 on the calling thread. The first exception is rethrown.
template <class Fn>
void for_chunks(std::size_t items, unsigned chunks, Fn&& fn) {
  if (chunks <= 1) {
    fn(0u, std::size_t{0}, items);
    return;
  }
  std::vector<std::exception_ptr> errors(chunks);
  auto run = [&](unsigned c) {
    const std::size_t begin = items * c / chunks;
    const std::size_t end = items * (c + 1) / chunks;
    try {
      fn(c, begin, end);
    } catch (...) {
      errors[c] = std::current_exception();
    }
  };
  {
    std::vector<std::jthread> workers;
    workers.reserve(chunks - 1);
    for (unsigned c = 1; c < chunks; ++c) workers.emplace_back(run, c);
    run(0);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace lns::detail
