#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace qjl {

struct ContinuedFraction {
  std::vector<std::int64_t> partial_quotients;
  // (p_j, q_j) coprime, q_j strictly increasing, p_j/q_j alternating
  // around omega.
  std::vector<std::pair<std::int64_t, std::int64_t>> convergents;
  bool rational = false;  // expansion terminated (remainder below 1e-15)
};

// Finite-n audit of the strong Diophantine condition
//   ||n w|| >= C_w / (n (log n)^alpha):
// margin is the smallest ||n w|| n (log n)^alpha over 2 <= n <= n_max.
struct DiophantineReport {
  double omega = 0.0;
  double alpha = 2.0;
  std::int64_t n_max = 0;
  std::int64_t worst_n = 0;
  double margin = 0.0;
  bool is_rational = false;
};

double dist_to_nearest_int(double x);

ContinuedFraction continued_fraction(double omega, int depth);

DiophantineReport diophantine_margin(double omega, double alpha,
                                     std::int64_t n_max);

// golden -> (sqrt(5)-1)/2, sqrt2m1 -> sqrt(2)-1, otherwise a decimal.
double parse_omega(const std::string& text);

}  // namespace qjl
