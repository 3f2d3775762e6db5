#pragma once

#include <cstddef>
#include <span>
#include <thread>
#include <vector>

namespace qjl {

// Upper bound on worker threads used by parallel_for (0 = hardware).
void set_max_threads(unsigned k);
unsigned max_threads();

// Pairwise (tree) summation with a fixed association order. The result is a
// function of the value sequence only, never of the thread count.
double pairwise_sum(std::span<const double> xs);

inline double pairwise_mean(std::span<const double> xs) {
  return xs.empty() ? 0.0 : pairwise_sum(xs) / double(xs.size());
}

// Map f over [0, count) into caller-owned storage. Each index is written by
// exactly one thread, so any partitioning yields identical results; the
// reduction is always the sequential pairwise_sum afterwards.
template <class F>
void parallel_for(std::size_t count, F&& f) {
  unsigned k = max_threads();
  if (k == 0) k = std::thread::hardware_concurrency();
  if (k == 0) k = 1;
  if (k == 1 || count < 2 * k) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(k);
  const std::size_t chunk = (count + k - 1) / k;
  for (unsigned t = 0; t < k; ++t) {
    const std::size_t lo = std::size_t(t) * chunk;
    if (lo >= count) break;
    const std::size_t hi = std::min(count, lo + chunk);
    workers.emplace_back([&f, lo, hi] {
      for (std::size_t i = lo; i < hi; ++i) f(i);
    });
  }
  for (auto& w : workers) w.join();
}

}  // namespace qjl
