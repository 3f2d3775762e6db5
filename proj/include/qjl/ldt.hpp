#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "qjl/cocycle.hpp"
#include "qjl/lyapunov.hpp"
#include "qjl/sampler.hpp"

namespace qjl {

// Empirical distribution of the finite-scale exponent u~_N(x) around its
// sampler mean, with deviation-set measures per delta.
struct DeviationHistogram {
  long n = 0;
  double energy = 0.0;
  std::size_t samples = 0;
  std::vector<double> bin_edges;
  std::vector<std::size_t> bin_counts;
  double mean = 0.0;  // equals finite_scale_l's l_n (same summation path)
  std::vector<std::pair<double, double>> deviation_measures;  // (delta, mes)
};

// Fit of -log(measure) against delta^2 N across histogram cells.
struct RateFit {
  std::vector<double> deltas;
  std::vector<long> n_values;
  double fitted_c = 0.0;
  double fit_quality = 0.0;  // R^2 of the regression
  double intercept = 0.0;
  bool censored = false;  // some cells entered at the 1/samples floor
};

struct BirkhoffField {
  long n = 0;
  std::vector<double> values;  // F_N per kept phase
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  double d_used = 0.0;  // the D subtracted inside Q
  std::vector<std::pair<double, double>> deviation_measures;
};

// Minimal empirical constants making the two uniform upper bounds tight:
//   u_N(x)       <= J_N + c (log N / N)^(1/2)
//   log||M~_N||  <= N L_N + c (N log N)^(1/2) - N F_N(x)
struct UniformBoundConstants {
  double transfer_c = 0.0;
  double unimodular_c = 0.0;
};

DeviationHistogram deviation_histogram(const CocycleSpec& spec, long n,
                                       const PhaseSampler& sampler,
                                       std::span<const double> deltas,
                                       std::size_t bins = 64);

RateFit fit_deviation_rate(std::span<const DeviationHistogram> histograms);

UniformBoundConstants uniform_upper_bound_check(const CocycleSpec& spec, long n,
                                                const PhaseSampler& sampler);

BirkhoffField birkhoff_field(const CocycleSpec& spec, long n,
                             const PhaseSampler& sampler,
                             std::span<const double> deltas);

}  // namespace qjl
