#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qjl/cocycle.hpp"
#include "qjl/sampler.hpp"

namespace qjl {

// Flat key = value run configuration (cocycle.a.cos.1 = 2.0 style).
// Omitted fields take the documented defaults; unknown keys are a hard
// error. Round-trips losslessly through serialize_config/parse_config.
struct RunConfig {
  FourierSeries a;
  FourierSeries b = FourierSeries::constant_fn(1.0);
  std::string omega_text = "golden";  // decimal, "golden", or "sqrt2m1"
  double omega = 0.0;                 // expanded value of omega_text
  double alpha = 2.0;
  std::vector<long> scales = {256};
  double energy_low = 0.0;
  double energy_high = 0.0;
  std::size_t energy_count = 1;
  PhaseSampler sampler;
  std::vector<double> deltas = {0.05, 0.1, 0.2};
  std::uint64_t seed = 0;

  CocycleSpec cocycle(double energy) const;
  std::vector<double> energy_grid() const;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config_file(const std::string& path);
std::string serialize_config(const RunConfig& cfg);

// 17-significant-digit shortest-round-trip style formatting used by every
// CSV/JSON emitter, so regression tests can diff outputs byte-wise.
std::string format_double(double v);

}  // namespace qjl
