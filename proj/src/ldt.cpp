#include "qjl/ldt.hpp"

#include <algorithm>
#include <cmath>

#include "qjl/reduce.hpp"

namespace qjl {

DeviationHistogram deviation_histogram(const CocycleSpec& spec, long n,
                                       const PhaseSampler& sampler,
                                       std::span<const double> deltas,
                                       std::size_t bins) {
  const PhaseField field = sample_phase_field(spec, n, sampler);
  if (field.dropped_measure > 0.01)
    throw TooManyDegenerateSamples(field.dropped_measure);

  DeviationHistogram h;
  h.n = n;
  h.energy = spec.energy;
  h.samples = field.utilde.size();
  h.mean = pairwise_mean(field.utilde);

  double lo = h.mean, hi = h.mean;
  for (double v : field.utilde) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (hi <= lo) hi = lo + 1e-15;  // degenerate flat field
  h.bin_edges.resize(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i)
    h.bin_edges[i] = lo + (hi - lo) * double(i) / double(bins);
  h.bin_counts.assign(bins, 0);
  for (double v : field.utilde) {
    std::size_t idx = std::size_t((v - lo) / (hi - lo) * double(bins));
    idx = std::min(idx, bins - 1);
    ++h.bin_counts[idx];
  }

  for (double delta : deltas) {
    std::size_t outside = 0;
    for (double v : field.utilde)
      if (std::abs(v - h.mean) > delta) ++outside;
    h.deviation_measures.emplace_back(
        delta, h.samples == 0 ? 0.0 : double(outside) / double(h.samples));
  }
  return h;
}

RateFit fit_deviation_rate(std::span<const DeviationHistogram> histograms) {
  RateFit fit;
  std::vector<double> xs, ys;
  for (const DeviationHistogram& h : histograms) {
    for (const auto& [delta, measure] : h.deviation_measures) {
      fit.deltas.push_back(delta);
      fit.n_values.push_back(h.n);
      double m = measure;
      if (m <= 0.0) {
        // Censored at the resolution floor: keeps the fit a lower bound.
        m = 1.0 / double(std::max<std::size_t>(h.samples, 1));
        fit.censored = true;
      }
      xs.push_back(delta * delta * double(h.n));
      ys.push_back(-std::log(m));
    }
  }
  if (xs.size() < 3)
    throw InsufficientData("rate fit needs at least 3 (delta, N) cells");

  const double m = double(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
    syy += ys[i] * ys[i];
  }
  const double vxx = sxx - sx * sx / m;
  const double vxy = sxy - sx * sy / m;
  const double vyy = syy - sy * sy / m;
  fit.fitted_c = vxy / vxx;
  fit.intercept = (sy - fit.fitted_c * sx) / m;
  fit.fit_quality = vyy > 0.0 ? (vxy * vxy) / (vxx * vyy) : 1.0;
  return fit;
}

UniformBoundConstants uniform_upper_bound_check(const CocycleSpec& spec, long n,
                                                const PhaseSampler& sampler) {
  if (n < 3) throw InsufficientData("uniform bound check needs n >= 3");
  const PhaseField field = sample_phase_field(spec, n, sampler);
  if (field.dropped_measure > 0.01)
    throw TooManyDegenerateSamples(field.dropped_measure);

  const double j_n = pairwise_mean(field.u);
  const double l_n = pairwise_mean(field.utilde);
  const double d_mean = pairwise_mean(field.d);
  const double nn = double(n);
  const double log_n = std::log(nn);

  UniformBoundConstants c;
  bool first = true;
  for (std::size_t i = 0; i < field.u.size(); ++i) {
    const double ct = (field.u[i] - j_n) * std::sqrt(nn / log_n);
    // M~ form: log||M~|| - N L_N + N F_N(x), scaled by (N log N)^(-1/2).
    const double f = field.d[i] - d_mean;
    const double cm = nn * (field.utilde[i] - l_n + f) / std::sqrt(nn * log_n);
    if (first) {
      c.transfer_c = ct;
      c.unimodular_c = cm;
      first = false;
    } else {
      c.transfer_c = std::max(c.transfer_c, ct);
      c.unimodular_c = std::max(c.unimodular_c, cm);
    }
  }
  return c;
}

BirkhoffField birkhoff_field(const CocycleSpec& spec, long n,
                             const PhaseSampler& sampler,
                             std::span<const double> deltas) {
  const PhaseField field = sample_phase_field(spec, n, sampler);
  if (field.dropped_measure > 0.01)
    throw TooManyDegenerateSamples(field.dropped_measure);

  BirkhoffField bf;
  bf.n = n;
  bf.d_used = mean_log_b(spec, sampler);
  bf.values.reserve(field.d.size());
  for (double d : field.d) bf.values.push_back(d - bf.d_used);
  bf.mean = pairwise_mean(bf.values);
  bf.min = bf.values.empty() ? 0.0 : bf.values.front();
  bf.max = bf.min;
  for (double v : bf.values) {
    bf.min = std::min(bf.min, v);
    bf.max = std::max(bf.max, v);
  }
  for (double delta : deltas) {
    std::size_t outside = 0;
    for (double v : bf.values)
      if (std::abs(v) > delta) ++outside;
    bf.deviation_measures.emplace_back(
        delta,
        bf.values.empty() ? 0.0 : double(outside) / double(bf.values.size()));
  }
  return bf;
}

}  // namespace qjl
