#include "qjl/diophantine.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qjl {

double dist_to_nearest_int(double x) {
  return std::abs(x - std::round(x));
}

ContinuedFraction continued_fraction(double omega, int depth) {
  if (!(omega > 0.0 && omega < 1.0))
    throw std::invalid_argument("omega must lie in (0,1)");
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");

  ContinuedFraction cf;
  // Convergent recurrence p_j = a_j p_{j-1} + p_{j-2}, same for q, seeded
  // for the a_0 = 0 head that an omega in (0,1) always has.
  std::int64_t pm1 = 0, pm2 = 1;  // p_{j-1}, p_{j-2}
  std::int64_t qm1 = 1, qm2 = 0;
  double x = omega;
  for (int j = 0; j < depth; ++j) {
    const double inv = 1.0 / x;
    double aj_f = std::floor(inv);
    double rem = inv - aj_f;
    // 1/x a hair under an integer is division noise on a rational omega;
    // snap up so the Euclidean remainder comes out as an exact zero.
    if (rem > 1.0 - 1e-12) {
      aj_f += 1.0;
      rem = 0.0;
    }
    if (aj_f > 9.0e15) {  // quotient past double integer range: treat rational
      cf.rational = true;
      break;
    }
    const std::int64_t aj = std::int64_t(aj_f);
    const std::int64_t p = aj * pm1 + pm2;
    const std::int64_t q = aj * qm1 + qm2;
    cf.partial_quotients.push_back(aj);
    cf.convergents.emplace_back(p, q);
    pm2 = pm1;
    pm1 = p;
    qm2 = qm1;
    qm1 = q;
    x = rem;
    // Below 1e-15 double precision cannot distinguish the remainder from 0.
    if (x < 1e-15) {
      cf.rational = true;
      break;
    }
    if (q > (std::int64_t(1) << 50)) break;  // further convergents overflow
  }
  return cf;
}

DiophantineReport diophantine_margin(double omega, double alpha,
                                     std::int64_t n_max) {
  if (!(alpha > 1.0)) throw std::invalid_argument("alpha must be > 1");
  if (n_max < 2) throw std::invalid_argument("n_max must be >= 2");

  DiophantineReport rep;
  rep.omega = omega;
  rep.alpha = alpha;
  rep.n_max = n_max;
  rep.margin = std::numeric_limits<double>::infinity();

  // n = 1 is vacuous ((log 1)^alpha = 0); the condition is a tail condition.
  double frac = omega;  // n * omega mod 1, advanced one step at a time
  for (std::int64_t n = 2; n <= n_max; ++n) {
    frac += omega;
    if (frac >= 1.0) frac -= 1.0;
    const double dist = std::min(frac, 1.0 - frac);
    const double weight = double(n) * std::pow(std::log(double(n)), alpha);
    const double v = dist * weight;
    if (v < rep.margin) {
      rep.margin = v;
      rep.worst_n = n;
    }
  }
  rep.is_rational = rep.margin == 0.0;
  return rep;
}

double parse_omega(const std::string& text) {
  if (text == "golden") return (std::sqrt(5.0) - 1.0) / 2.0;
  if (text == "sqrt2m1") return std::sqrt(2.0) - 1.0;
  std::size_t pos = 0;
  const double v = std::stod(text, &pos);
  if (pos != text.size())
    throw std::invalid_argument("cannot parse omega: " + text);
  return v;
}

}  // namespace qjl
