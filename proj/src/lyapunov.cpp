#include "qjl/lyapunov.hpp"

#include <algorithm>
#include <cmath>

#include "qjl/reduce.hpp"

namespace qjl {

PhaseField sample_phase_field(const CocycleSpec& spec, long n,
                              const PhaseSampler& sampler) {
  const std::vector<double> xs = sampler.phases(spec.omega);
  const std::size_t total = xs.size();
  std::vector<double> u(total), d(total);
  std::vector<char> kept(total, 1);

  parallel_for(total, [&](std::size_t i) {
    try {
      const TransferNorms tn = transfer_norms(spec, xs[i], n);
      u[i] = tn.log_t / double(n);
      d[i] = 0.5 * tn.corr / double(n);
    } catch (const NearSingularSamplingFunction&) {
      kept[i] = 0;
    } catch (const DegenerateProduct&) {
      kept[i] = 0;
    }
  });

  PhaseField field;
  field.u.reserve(total);
  for (std::size_t i = 0; i < total; ++i) {
    if (!kept[i]) continue;
    field.u.push_back(u[i]);
    field.d.push_back(d[i]);
    field.utilde.push_back(u[i] - d[i]);
    field.kept_phases.push_back(xs[i]);
  }
  field.dropped_measure =
      total == 0 ? 0.0 : double(total - field.u.size()) / double(total);
  return field;
}

double mean_log_b(const CocycleSpec& spec, const PhaseSampler& sampler) {
  const std::vector<double> xs = sampler.phases(spec.omega);
  std::vector<double> vals;
  vals.reserve(xs.size());
  std::size_t dropped = 0;
  for (double x : xs) {
    const double bx = spec.b(x);
    if (std::abs(bx) < spec.b_floor) {
      ++dropped;
      continue;
    }
    vals.push_back(std::log(std::abs(bx)));
  }
  const double dropped_measure =
      xs.empty() ? 0.0 : double(dropped) / double(xs.size());
  if (dropped_measure > 0.01) throw TooManyDegenerateSamples(dropped_measure);
  return pairwise_mean(vals);
}

ScaleEstimate finite_scale_l(const CocycleSpec& spec, long n,
                             const PhaseSampler& sampler) {
  const PhaseField field = sample_phase_field(spec, n, sampler);
  if (field.dropped_measure > 0.01)
    throw TooManyDegenerateSamples(field.dropped_measure);

  ScaleEstimate est;
  est.n = n;
  est.samples = field.utilde.size();
  est.dropped_measure = field.dropped_measure;
  est.l_n = pairwise_mean(field.utilde);
  est.j_n = pairwise_mean(field.u);
  est.d_n = pairwise_mean(field.d);

  if (est.samples > 1) {
    std::vector<double> sq(est.samples);
    for (std::size_t i = 0; i < est.samples; ++i) {
      const double dev = field.utilde[i] - est.l_n;
      sq[i] = dev * dev;
    }
    est.std_err = std::sqrt(pairwise_sum(sq) /
                            (double(est.samples) * double(est.samples - 1)));
  }
  return est;
}

LimitEstimate accelerated_limit(const CocycleSpec& spec, long n,
                                const PhaseSampler& sampler) {
  LimitEstimate lim;
  lim.n_used = n;
  lim.ladder.push_back(finite_scale_l(spec, n, sampler));
  lim.ladder.push_back(finite_scale_l(spec, 2 * n, sampler));
  const double l1 = lim.ladder[0].l_n;
  const double l2 = lim.ladder[1].l_n;
  lim.l_inf = 2.0 * l2 - l1;
  lim.doubling_gap = std::abs(l1 - l2);
  lim.ap_regime_ok = (l1 - l2) <= l1 / 10.0;
  return lim;
}

double energy_perturbation_probe(const CocycleSpec& spec, double e0, double e1,
                                 long n, const PhaseSampler& sampler) {
  if (e0 == e1) return 0.0;
  CocycleSpec s0 = spec;
  s0.energy = e0;
  CocycleSpec s1 = spec;
  s1.energy = e1;
  return std::abs(finite_scale_l(s0, n, sampler).l_n -
                  finite_scale_l(s1, n, sampler).l_n);
}

std::vector<LimitEstimate> limit_grid(const CocycleSpec& base,
                                      std::span<const double> energies, long n,
                                      const PhaseSampler& sampler) {
  std::vector<LimitEstimate> out;
  out.reserve(energies.size());
  for (double e : energies) {
    CocycleSpec spec = base;
    spec.energy = e;
    out.push_back(accelerated_limit(spec, n, sampler));
  }
  return out;
}

HolderFit holder_fit(const CocycleSpec& base, std::span<const double> energies,
                     long n, const PhaseSampler& sampler,
                     double positivity_tol) {
  if (energies.size() < 2)
    throw InsufficientData("holder fit needs at least 2 grid energies");

  const std::vector<LimitEstimate> limits =
      limit_grid(base, energies, n, sampler);

  std::vector<double> bad;
  for (std::size_t i = 0; i < energies.size(); ++i)
    if (limits[i].l_inf <= positivity_tol) bad.push_back(energies[i]);
  if (!bad.empty()) throw PositivityViolated(std::move(bad));

  const auto [lo_it, hi_it] =
      std::minmax_element(energies.begin(), energies.end());
  const double span = *hi_it - *lo_it;
  // Only local pairs enter: the continuity statement is local in energy.
  const double cap = span / 4.0;

  // Pair differences of the scale-n estimates. The accelerated values above
  // gate positivity but are useless for the regression: on a flat stretch of
  // the spectrum they are pure acceleration noise.
  std::vector<std::pair<double, double>> pairs;  // (|dE|, |dL|)
  for (std::size_t i = 0; i < energies.size(); ++i) {
    for (std::size_t j = i + 1; j < energies.size(); ++j) {
      const double de = std::abs(energies[i] - energies[j]);
      if (de == 0.0 || de > cap) continue;
      pairs.emplace_back(de, std::abs(limits[i].ladder.front().l_n -
                                      limits[j].ladder.front().l_n));
    }
  }
  std::sort(pairs.begin(), pairs.end());

  // Group pairs sharing a separation and take the median |dL| per group.
  // The median is essential: symmetric energy pairs of an even cocycle
  // family difference to rounding noise, and isolated spectral-gap points
  // spike, and either population wrecks an all-pairs least squares.
  std::vector<double> lx, ly;
  std::size_t used_pairs = 0;
  std::size_t g = 0;
  while (g < pairs.size()) {
    std::size_t h = g + 1;
    while (h < pairs.size() &&
           pairs[h].first - pairs[g].first <= 1e-9 * pairs[h].first)
      ++h;
    std::vector<double> dls;
    dls.reserve(h - g);
    for (std::size_t k = g; k < h; ++k) dls.push_back(pairs[k].second);
    std::sort(dls.begin(), dls.end());
    const double med = dls[dls.size() / 2];
    if (med >= 1e-13) {  // below that the bin is pure cancellation
      lx.push_back(std::log(pairs[g].first));
      ly.push_back(std::log(med));
      used_pairs += h - g;
    }
    g = h;
  }
  if (lx.size() < 2) throw InsufficientData("insufficient pairs for fit");

  const double m = double(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
    syy += ly[i] * ly[i];
  }
  const double vxx = sxx - sx * sx / m;
  const double vxy = sxy - sx * sy / m;
  const double vyy = syy - sy * sy / m;

  HolderFit fit;
  fit.raw_slope = vxy / vxx;
  fit.intercept = (sy - fit.raw_slope * sx) / m;
  fit.r_squared = vyy > 0.0 ? (vxy * vxy) / (vxx * vyy) : 1.0;
  fit.beta = std::min(fit.raw_slope, 1.0);
  fit.window_low = *lo_it;
  fit.window_high = *hi_it;
  fit.pair_count = used_pairs;
  return fit;
}

}  // namespace qjl
