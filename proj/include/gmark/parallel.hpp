// Order-preserving fan-out over an index range.
#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace gmark {

/// Worker count from an explicit request, falling back to GMARK_THREADS, then 1.
unsigned resolve_threads(unsigned requested);

/// Calls fn(i) for i in [0, n) on up to `threads` workers. Each result slot is
/// written by exactly one worker, so output order never depends on scheduling.
template <class Result, class Fn>
std::vector<Result> parallel_map(std::size_t n, unsigned threads, Fn&& fn) {
  std::vector<Result> out(n);
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::exception_ptr failure;
  std::mutex failure_mu;
  std::vector<std::thread> workers;
  workers.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < n; i += threads) out[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace gmark
