#pragma once

#include <algorithm>
#include <cmath>

namespace qjl {

// Real 2x2 matrix, row-major.
struct Mat2 {
  double m00 = 0.0, m01 = 0.0;
  double m10 = 0.0, m11 = 0.0;

  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

  double det() const { return m00 * m11 - m01 * m10; }

  double frobenius_sq() const {
    return m00 * m00 + m01 * m01 + m10 * m10 + m11 * m11;
  }

  double frobenius() const { return std::sqrt(frobenius_sq()); }

  // Largest singular value, closed form:
  //   sigma1^2 = (|M|_F^2 + sqrt(|M|_F^4 - 4 det^2 M)) / 2.
  // Branch-free; the discriminant is clamped at 0 against rounding.
  double op_norm() const {
    const double f = frobenius_sq();
    const double d = det();
    const double disc = std::max(f * f - 4.0 * d * d, 0.0);
    return std::sqrt(0.5 * (f + std::sqrt(disc)));
  }

  Mat2 scaled(double s) const { return {s * m00, s * m01, s * m10, s * m11}; }

  friend Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
            a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
  }
};

inline double frobenius_dist(const Mat2& a, const Mat2& b) {
  const Mat2 d{a.m00 - b.m00, a.m01 - b.m01, a.m10 - b.m10, a.m11 - b.m11};
  return d.frobenius();
}

// Unit-operator-norm matrix plus the accumulated log of the removed factor.
// Keeps arbitrarily long transfer products representable in double precision.
struct LogScaledMat2 {
  Mat2 unit;              // operator norm 1 within rounding
  double log_scale = 0.0; // natural log of the true norm factor

  static LogScaledMat2 identity() { return {Mat2::identity(), 0.0}; }
};

// (a * b) in log-scaled form; both factors unit scale, one renormalization.
inline LogScaledMat2 compose(const LogScaledMat2& a, const LogScaledMat2& b) {
  const Mat2 p = a.unit * b.unit;
  const double s = p.op_norm();
  return {p.scaled(1.0 / s), a.log_scale + b.log_scale + std::log(s)};
}

}  // namespace qjl
