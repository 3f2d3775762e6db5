#include "qjl/fourier.hpp"

#include <algorithm>

namespace qjl {

double eval_series(const FourierSeries& f, double x) { return f(x); }

double sup_abs_bound(const FourierSeries& f) {
  constexpr int kGrid = 4096;
  double grid_max = 0.0;
  for (int i = 0; i < kGrid; ++i)
    grid_max = std::max(grid_max, std::abs(f(double(i) / kGrid)));
  return std::min(grid_max, f.l1_norm());
}

}  // namespace qjl
