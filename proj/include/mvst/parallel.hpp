#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace mvst {

  /// Run body(i) for i in [0, n) on up to `threads` workers.
  /// Work items are claimed dynamically; the body must write only to slot i of its outputs.
  /// The first exception thrown by any item is rethrown on the calling thread.
  template<typename Body>
  void parallel_for(std::size_t n, unsigned threads, Body&& body) {
    const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), n);
    if (workers <= 1) {
      for (std::size_t i = 0; i < n; ++i) { body(i); }
      return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) { failure = std::current_exception(); }
          next = n;
        }
      }
    };
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) { pool.emplace_back(work); }
    work();
    pool.clear();
    if (failure) { std::rethrow_exception(failure); }
  }

} // namespace mvst
