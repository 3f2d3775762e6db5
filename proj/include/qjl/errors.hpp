#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qjl {

// Running transfer product collapsed to the exact zero matrix.
struct DegenerateProduct : std::runtime_error {
  std::size_t step;
  explicit DegenerateProduct(std::size_t s)
      : std::runtime_error("transfer product became the zero matrix at step " +
                           std::to_string(s)),
        step(s) {}
};

// |b| fell below the configured floor along the orbit; the phase must be
// perturbed by the caller.
struct NearSingularSamplingFunction : std::runtime_error {
  double phase;
  explicit NearSingularSamplingFunction(double x)
      : std::runtime_error("sampling function b nearly vanishes at phase " +
                           std::to_string(x)),
        phase(x) {}
};

struct TooManyDegenerateSamples : std::runtime_error {
  double dropped_measure;
  explicit TooManyDegenerateSamples(double m)
      : std::runtime_error("dropped phase measure " + std::to_string(m) +
                           " exceeds 1%"),
        dropped_measure(m) {}
};

struct PositivityViolated : std::runtime_error {
  std::vector<double> energies;  // grid points where L <= tolerance
  explicit PositivityViolated(std::vector<double> es)
      : std::runtime_error("Lyapunov exponent not positive on the whole grid"),
        energies(std::move(es)) {}
};

struct InsufficientData : std::runtime_error {
  explicit InsufficientData(const std::string& what)
      : std::runtime_error(what) {}
};

struct HypothesesNotMet : std::runtime_error {
  HypothesesNotMet() : std::runtime_error("avalanche hypotheses not met") {}
};

struct DeterminantTooLarge : std::runtime_error {
  std::size_t index;
  double det;
  DeterminantTooLarge(std::size_t i, double d)
      : std::runtime_error("|det A_" + std::to_string(i + 1) + "| = " +
                           std::to_string(d) + " exceeds 1"),
        index(i),
        det(d) {}
};

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qjl
