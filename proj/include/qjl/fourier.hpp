#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace qjl {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Real trigonometric polynomial on the circle:
//   f(x) = constant + sum_k cos_k cos(2 pi k x) + sum_k sin_k sin(2 pi k x),
// vector index i holding frequency k = i + 1.
struct FourierSeries {
  double constant = 0.0;
  std::vector<double> cosine_coeffs;
  std::vector<double> sine_coeffs;

  double operator()(double x) const {
    double v = constant;
    for (std::size_t i = 0; i < cosine_coeffs.size(); ++i)
      v += cosine_coeffs[i] * std::cos(kTwoPi * double(i + 1) * x);
    for (std::size_t i = 0; i < sine_coeffs.size(); ++i)
      v += sine_coeffs[i] * std::sin(kTwoPi * double(i + 1) * x);
    return v;
  }

  bool is_zero() const {
    if (constant != 0.0) return false;
    for (double c : cosine_coeffs)
      if (c != 0.0) return false;
    for (double s : sine_coeffs)
      if (s != 0.0) return false;
    return true;
  }

  // |constant| + sum of |coefficients|; an upper bound for sup |f|.
  double l1_norm() const {
    double v = std::abs(constant);
    for (double c : cosine_coeffs) v += std::abs(c);
    for (double s : sine_coeffs) v += std::abs(s);
    return v;
  }

  static FourierSeries constant_fn(double c) { return {c, {}, {}}; }

  static FourierSeries cosine_wave(double amplitude, int frequency = 1) {
    FourierSeries f;
    f.cosine_coeffs.assign(std::size_t(frequency), 0.0);
    f.cosine_coeffs.back() = amplitude;
    return f;
  }
};

double eval_series(const FourierSeries& f, double x);

// min(4096-point grid max of |f|, l1 norm); certified enough for slack checks.
double sup_abs_bound(const FourierSeries& f);

}  // namespace qjl
