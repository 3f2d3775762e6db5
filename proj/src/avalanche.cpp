#include "qjl/avalanche.hpp"

#include <cmath>

namespace qjl {

double ApBlockChain::max_pair_defect() const {
  double worst = 0.0;
  for (std::size_t j = 0; j + 1 < block_log_norms.size(); ++j) {
    const double defect =
        block_log_norms[j] + block_log_norms[j + 1] - pair_log_norms[j];
    worst = std::max(worst, defect);
  }
  return worst;
}

bool ApBlockChain::hypotheses_met() const {
  if (n < 3 || block_log_norms.size() != n ||
      pair_log_norms.size() + 1 != n)
    return false;
  if (!(mu > double(n))) return false;  // strict, borderline mu == n fails
  return max_pair_defect() < 0.5 * std::log(mu);
}

ApVerdict ap_verify(std::span<const Mat2> matrices) {
  const std::size_t n = matrices.size();
  if (n < 3) throw InsufficientData("avalanche chain needs at least 3 blocks");

  for (std::size_t j = 0; j < n; ++j) {
    const double d = std::abs(matrices[j].det());
    if (d > 1.0 + 1e-9) throw DeterminantTooLarge(j, d);
  }

  ApBlockChain chain;
  chain.n = n;
  chain.block_log_norms.reserve(n);
  std::vector<LogScaledMat2> units;
  units.reserve(n);
  for (const Mat2& m : matrices) {
    const double s = m.op_norm();
    units.push_back({m.scaled(1.0 / s), std::log(s)});
    chain.block_log_norms.push_back(units.back().log_scale);
  }
  double min_block = chain.block_log_norms.front();
  for (double b : chain.block_log_norms) min_block = std::min(min_block, b);
  chain.mu = std::exp(min_block);

  // Pair products in log-scaled form; safe for mu near overflow.
  chain.pair_log_norms.reserve(n - 1);
  for (std::size_t j = 0; j + 1 < n; ++j)
    chain.pair_log_norms.push_back(compose(units[j + 1], units[j]).log_scale);

  LogScaledMat2 full = units.front();
  for (std::size_t j = 1; j < n; ++j) full = compose(units[j], full);

  double mid_blocks = 0.0;
  for (std::size_t j = 1; j + 1 < n; ++j) mid_blocks += chain.block_log_norms[j];
  double pairs = 0.0;
  for (double p : chain.pair_log_norms) pairs += p;

  ApVerdict v;
  v.n = n;
  v.mu = chain.mu;
  v.direct_log_norm = full.log_scale;
  v.estimate = pairs - mid_blocks;
  v.lhs = std::abs(full.log_scale + mid_blocks - pairs);
  v.bound_ratio = v.lhs * chain.mu / double(n);
  v.hypotheses_met = chain.hypotheses_met();
  return v;
}

double ap_estimate_log_norm(const ApBlockChain& chain) {
  if (!chain.hypotheses_met()) throw HypothesesNotMet();
  double pairs = 0.0;
  for (double p : chain.pair_log_norms) pairs += p;
  double mid_blocks = 0.0;
  for (std::size_t j = 1; j + 1 < chain.n; ++j)
    mid_blocks += chain.block_log_norms[j];
  return pairs - mid_blocks;
}

ApBlockChain cocycle_block_chain(const CocycleSpec& spec, double x,
                                 long block_n, std::size_t m) {
  ApBlockChain chain;
  chain.n = m;
  chain.block_log_norms.reserve(m);
  chain.pair_log_norms.reserve(m - 1);

  double ph = wrap_unit(x);
  for (std::size_t j = 0; j < m; ++j) {
    const TransferNorms tn = transfer_norms(spec, ph, block_n);
    chain.block_log_norms.push_back(tn.log_t - 0.5 * tn.corr);
    if (j + 1 < m)
      chain.pair_log_norms.push_back(
          normalized_log_norm(spec, ph, 2 * block_n));
    ph = tn.end_phase;
  }
  double min_block = chain.block_log_norms.front();
  for (double b : chain.block_log_norms) min_block = std::min(min_block, b);
  chain.mu = std::exp(min_block);
  return chain;
}

double multiscale_combination(const CocycleSpec& spec, long n, std::size_t m,
                              const PhaseSampler& sampler) {
  if (m < 3) throw InsufficientData("multiscale combination needs m >= 3");
  const double l_n = finite_scale_l(spec, n, sampler).l_n;
  const double l_2n = finite_scale_l(spec, 2 * n, sampler).l_n;
  const double l_mn = finite_scale_l(spec, long(m) * n, sampler).l_n;
  return std::abs(l_mn + l_n - 2.0 * l_2n);
}

}  // namespace qjl
