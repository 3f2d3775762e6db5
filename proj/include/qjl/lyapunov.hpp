#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qjl/cocycle.hpp"
#include "qjl/sampler.hpp"

namespace qjl {

// One rung of the multiscale ladder.
struct ScaleEstimate {
  long n = 0;
  double l_n = 0.0;      // estimate of L_N(E)
  double std_err = 0.0;
  double dropped_measure = 0.0;
  double j_n = 0.0;      // estimate of J_N(E), averaged from log||T_N||
  double d_n = 0.0;      // orbit-averaged b-correction, j_n - l_n per sample
  std::size_t samples = 0;
  bool reliable() const { return dropped_measure <= 0.01; }
};

struct LimitEstimate {
  double l_inf = 0.0;      // 2 L_2N - L_N
  long n_used = 0;
  double doubling_gap = 0.0;  // |L_N - L_2N|
  bool ap_regime_ok = true;   // L_2N > (9/10) L_N heuristic window
  std::vector<ScaleEstimate> ladder;
};

struct HolderFit {
  double beta = 0.0;       // raw_slope clamped to the reportable range (0, 1]
  double raw_slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double window_low = 0.0;
  double window_high = 0.0;
  std::size_t pair_count = 0;
};

// Per-phase field of finite-scale exponents; all estimators share this path
// so their means agree bit for bit.
struct PhaseField {
  std::vector<double> u;       // log||T_n|| / n per kept phase
  std::vector<double> utilde;  // log||M~_n|| / n = u - d
  std::vector<double> d;       // b-correction / n
  std::vector<double> kept_phases;
  double dropped_measure = 0.0;
};
PhaseField sample_phase_field(const CocycleSpec& spec, long n,
                              const PhaseSampler& sampler);

// Quadrature estimate of D = integral of log |b| over the circle; phases
// where |b| hits the floor are dropped and their measure recorded.
double mean_log_b(const CocycleSpec& spec, const PhaseSampler& sampler);

ScaleEstimate finite_scale_l(const CocycleSpec& spec, long n,
                             const PhaseSampler& sampler);

// Doubling-accelerated limit 2 L_2N - L_N.
LimitEstimate accelerated_limit(const CocycleSpec& spec, long n,
                                const PhaseSampler& sampler);

// |L_N(e0) - L_N(e1)|, used to choose Holder regression windows.
double energy_perturbation_probe(const CocycleSpec& spec, double e0, double e1,
                                 long n, const PhaseSampler& sampler);

// Least-squares slope of log |L(E)-L(E')| against log |E-E'| over grid pairs
// with |E-E'| at most a quarter of the grid span; pairs sharing a separation
// are collapsed to their median |dL| before the fit (robust against the
// degenerate pairs of even families and isolated spectral-gap spikes).
// Throws PositivityViolated if any accelerated limit on the grid is
// <= tolerance.
HolderFit holder_fit(const CocycleSpec& base, std::span<const double> energies,
                     long n, const PhaseSampler& sampler,
                     double positivity_tol = 1e-6);

// Accelerated limits per grid energy (the inputs holder_fit regresses over).
std::vector<LimitEstimate> limit_grid(const CocycleSpec& base,
                                      std::span<const double> energies, long n,
                                      const PhaseSampler& sampler);

}  // namespace qjl
