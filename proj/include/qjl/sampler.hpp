#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace qjl {

// Discretization of the phase integral over the circle. Identical
// configuration always reproduces identical samples.
struct PhaseSampler {
  enum class Kind { EquispacedGrid, OrbitBirkhoff, StratifiedRandom };

  Kind kind = Kind::EquispacedGrid;
  std::size_t count = 1024;
  // NaN means the documented default (sqrt(5)-1)/(2 count), an irrational
  // offset keeping grid points off the convergent orbits of omega.
  double offset = std::numeric_limits<double>::quiet_NaN();
  std::uint64_t seed = 0;  // StratifiedRandom only

  // omega is consumed by the OrbitBirkhoff kind only.
  std::vector<double> phases(double omega = 0.0) const;

  static PhaseSampler grid(std::size_t n) {
    PhaseSampler s;
    s.count = n;
    return s;
  }
};

const char* to_string(PhaseSampler::Kind k);
PhaseSampler::Kind sampler_kind_from_string(const std::string& name);

}  // namespace qjl
