#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ksumlab {

/// Splits [0, total) into contiguous chunks, runs fn(begin, end) -> Partial on
/// up to `jobs` threads and returns the partials in chunk order. The chunk
/// layout depends only on `total`, so an order-respecting merge of the
/// result is independent of the worker count.
template <class Partial, class Fn>
std::vector<Partial> parallel_chunks(std::uint64_t total, unsigned jobs, Fn&& fn,
                                     std::uint64_t chunk_count = 64) {
  if (total == 0) return {};
  chunk_count = std::max<std::uint64_t>(1, std::min(chunk_count, total));
  std::vector<Partial> parts(chunk_count);
  const auto bounds = [&](std::uint64_t c) {
    return std::pair{total * c / chunk_count, total * (c + 1) / chunk_count};
  };
  jobs = std::max(1U, jobs);
  if (jobs == 1) {
    for (std::uint64_t c = 0; c < chunk_count; ++c) {
      auto [b, e] = bounds(c);
      parts[c] = fn(b, e);
    }
    return parts;
  }
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  std::vector<std::thread> pool;
  const unsigned n = static_cast<unsigned>(std::min<std::uint64_t>(jobs, chunk_count));
  for (unsigned t = 0; t < n; ++t)
    pool.emplace_back([&] {
      try {
        for (std::uint64_t c; (c = next.fetch_add(1)) < chunk_count;) {
          auto [b, e] = bounds(c);
          parts[c] = fn(b, e);
        }
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = chunk_count;
      }
    });
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return parts;
}

}  // namespace ksumlab
