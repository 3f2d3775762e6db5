#include "qjl/sampler.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "qjl/cocycle.hpp"

namespace qjl {

std::vector<double> PhaseSampler::phases(double omega) const {
  std::vector<double> xs;
  xs.reserve(count);
  double off = offset;
  if (std::isnan(off)) off = (std::sqrt(5.0) - 1.0) / (2.0 * double(count));
  switch (kind) {
    case Kind::EquispacedGrid:
      for (std::size_t k = 0; k < count; ++k)
        xs.push_back(wrap_unit(off + double(k) / double(count)));
      break;
    case Kind::OrbitBirkhoff: {
      double x = wrap_unit(off);
      for (std::size_t k = 0; k < count; ++k) {
        xs.push_back(x);
        x = advance_phase(x, omega);
      }
      break;
    }
    case Kind::StratifiedRandom: {
      std::mt19937_64 rng(seed);
      std::uniform_real_distribution<double> u(0.0, 1.0);
      for (std::size_t k = 0; k < count; ++k)
        xs.push_back(wrap_unit((double(k) + u(rng)) / double(count) + off));
      break;
    }
  }
  return xs;
}

const char* to_string(PhaseSampler::Kind k) {
  switch (k) {
    case PhaseSampler::Kind::EquispacedGrid: return "equispaced_grid";
    case PhaseSampler::Kind::OrbitBirkhoff: return "orbit_birkhoff";
    case PhaseSampler::Kind::StratifiedRandom: return "stratified_random";
  }
  return "equispaced_grid";
}

PhaseSampler::Kind sampler_kind_from_string(const std::string& name) {
  if (name == "equispaced_grid") return PhaseSampler::Kind::EquispacedGrid;
  if (name == "orbit_birkhoff") return PhaseSampler::Kind::OrbitBirkhoff;
  if (name == "stratified_random") return PhaseSampler::Kind::StratifiedRandom;
  throw std::invalid_argument("unknown sampler kind: " + name);
}

}  // namespace qjl
