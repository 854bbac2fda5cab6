#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace qclone::detail {

inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Splits [0, n) into contiguous chunks and runs fn(chunk_index, begin, end)
// on each. Returns one result per chunk, in chunk order.
template <typename Fn>
auto run_chunked(std::size_t n, unsigned threads, Fn fn) {
  using Result = decltype(fn(std::size_t{}, std::size_t{}, std::size_t{}));
  const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(resolve_threads(threads), n));
  std::vector<Result> results(chunks);
  auto bounds = [&](std::size_t c) { return std::pair{n * c / chunks, n * (c + 1) / chunks}; };
  if (chunks == 1) {
    results[0] = fn(0, 0, n);
    return results;
  }
  std::vector<std::jthread> workers;
  workers.reserve(chunks);
  for (std::size_t c = 0; c < chunks; ++c)
    workers.emplace_back([&, c] {
      auto [b, e] = bounds(c);
      results[c] = fn(c, b, e);
    });
  workers.clear();
  return results;
}

}  // namespace qclone::detail
