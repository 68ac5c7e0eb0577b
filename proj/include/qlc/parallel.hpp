#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace qlc {

inline unsigned default_thread_count() {
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace detail {

// Splits [0, count) into contiguous chunks, one per worker, and calls
// fn(chunk, begin, end). Chunk boundaries depend only on count and threads,
// so reductions in chunk order are deterministic.
template <typename Fn>
void parallel_chunks(std::uint64_t count, unsigned threads, Fn&& fn) {
  threads = std::max(1u, threads);
  const std::uint64_t chunks = std::min<std::uint64_t>(threads, std::max<std::uint64_t>(count, 1));
  const std::uint64_t step = (count + chunks - 1) / chunks;
  if (chunks == 1) {
    fn(0u, std::uint64_t{0}, count);
    return;
  }
  std::vector<std::exception_ptr> errors(chunks);
  {
    std::vector<std::jthread> workers;
    for (unsigned c = 0; c < chunks; ++c) {
      const std::uint64_t begin = std::min(count, c * step);
      const std::uint64_t end = std::min(count, begin + step);
      workers.emplace_back([&, c, begin, end] {
        try {
          fn(c, begin, end);
        } catch (...) {
          errors[c] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

inline unsigned chunk_count(std::uint64_t count, unsigned threads) {
  return static_cast<unsigned>(
      std::min<std::uint64_t>(std::max(1u, threads), std::max<std::uint64_t>(count, 1)));
}

}  // namespace detail
}  // namespace qlc
