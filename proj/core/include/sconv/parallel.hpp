#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace sconv {

/// Worker count used when callers pass 0.
inline unsigned default_workers() { return std::max(1U, std::thread::hardware_concurrency()); }

/// Splits [first, last) into `workers` contiguous ranges and runs body(lo, hi)
/// on each. Ranges are disjoint, so results never depend on the worker count.
/// The first exception thrown by any range is rethrown.
template <class Body>
void parallel_ranges(std::uint64_t first, std::uint64_t last, unsigned workers, Body&& body) {
  if (last <= first) return;
  if (workers == 0) workers = default_workers();
  const std::uint64_t span = last - first;
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, span));
  if (workers <= 1) {
    body(first, last);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t lo = first + span * w / workers;
    const std::uint64_t hi = first + span * (w + 1) / workers;
    threads.emplace_back([&, w, lo, hi] {
      try {
        body(lo, hi);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace sconv
