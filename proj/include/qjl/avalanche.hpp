#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qjl/cocycle.hpp"
#include "qjl/lyapunov.hpp"
#include "qjl/mat2.hpp"

namespace qjl {

// Block data for one application of the avalanche principle: per-block and
// consecutive-pair log norms plus the hyperbolicity lower bound mu.
struct ApBlockChain {
  std::vector<double> block_log_norms;  // log||A_j||, j = 1..n
  std::vector<double> pair_log_norms;   // log||A_{j+1} A_j||, j = 1..n-1
  double mu = 0.0;                      // exp(min block log norm)
  std::size_t n = 0;

  double max_pair_defect() const;
  // min||A_j|| >= mu > n (strict) and every pair defect < (1/2) log mu.
  bool hypotheses_met() const;
};

struct ApVerdict {
  double lhs = 0.0;          // |log||A_n...A_1|| + sum mid blocks - sum pairs|
  double bound_ratio = 0.0;  // lhs * mu / n
  bool hypotheses_met = false;
  double mu = 0.0;
  std::size_t n = 0;
  double direct_log_norm = 0.0;
  double estimate = 0.0;     // sum pairs - sum mid blocks
};

// Verify the telescoping identity on an explicit chain. Requires n >= 3 and
// |det A_j| <= 1 (tolerance 1e-9).
ApVerdict ap_verify(std::span<const Mat2> matrices);

// sum_j log||A_{j+1}A_j|| - sum_{j=2}^{n-1} log||A_j||; valid approximation
// of the full product's log norm only when the hypotheses hold.
double ap_estimate_log_norm(const ApBlockChain& chain);

// Chain of m unimodular cocycle blocks M~_N(x + (j-1) N w); pair norms are
// the 2N-scale log norms at the shifted phases.
ApBlockChain cocycle_block_chain(const CocycleSpec& spec, double x,
                                 long block_n, std::size_t m);

// Phase-averaged |L_{mN} + L_N - 2 L_{2N}| from direct estimates at the
// three scales.
double multiscale_combination(const CocycleSpec& spec, long n, std::size_t m,
                              const PhaseSampler& sampler);

}  // namespace qjl
