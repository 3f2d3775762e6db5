#include "qjl/reduce.hpp"

#include <atomic>

namespace qjl {

namespace {
std::atomic<unsigned> g_max_threads{0};

double pairwise_sum_impl(const double* xs, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += xs[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum_impl(xs, half) + pairwise_sum_impl(xs + half, n - half);
}
}  // namespace

void set_max_threads(unsigned k) { g_max_threads.store(k); }
unsigned max_threads() { return g_max_threads.load(); }

double pairwise_sum(std::span<const double> xs) {
  return pairwise_sum_impl(xs.data(), xs.size());
}

}  // namespace qjl
