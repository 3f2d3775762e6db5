#pragma once

#include <cmath>
#include <cstdint>

#include "qjl/errors.hpp"
#include "qjl/fourier.hpp"
#include "qjl/mat2.hpp"

namespace qjl {

// One quasi-periodic Jacobi cocycle: sampling functions a, b, frequency
// omega and spectral parameter E. Rational omega is allowed (the
// diophantine module flags it); b must not be identically zero.
struct CocycleSpec {
  FourierSeries a;
  FourierSeries b = FourierSeries::constant_fn(1.0);
  double omega = 0.0;
  double energy = 0.0;
  double b_floor = 1e-300;  // |b| below this raises NearSingularSamplingFunction
};

// Reduce to [0, 1).
inline double wrap_unit(double x) { return x - std::floor(x); }

// One fused step of phase advance; long products call this per factor so the
// accumulated rounding stays O(n ulp) instead of compounding in k * omega.
inline double advance_phase(double x, double omega) {
  return wrap_unit(x + omega);
}

// One-step transfer matrix  B(x) = [[a(x)-E, -b(x)], [b(x+w), 0]].
Mat2 step_matrix_b(const CocycleSpec& spec, double x);

// B(x+(n-1)w) ... B(x), renormalized to unit operator norm after every
// multiplication. Throws DegenerateProduct if the running matrix hits zero.
LogScaledMat2 transfer_product_t(const CocycleSpec& spec, double x, long n);

// One pass over the orbit: log ||T_n|| together with the b-corrections that
// relate T_n to the unimodular product.
struct TransferNorms {
  double log_t = 0.0;       // log ||T_n(x)||
  double corr = 0.0;        // sum_{k=0}^{n-1} log |b(x+kw) b(x+(k+1)w)|
  double log_det = 0.0;     // log |det T_n| accumulated from matrix entries
  double det_sign = 1.0;    // sign of det T_n
  double end_phase = 0.0;   // x + nw after fused reduction
};
TransferNorms transfer_norms(const CocycleSpec& spec, double x, long n);

// log ||M~_n(x)|| = log ||T_n|| - (1/2) sum log |b(x+kw) b(x+(k+1)w)|.
// Nonnegative up to rounding since M~ is unimodular.
double normalized_log_norm(const CocycleSpec& spec, double x, long n);

// Relative residual of det M_n(x) against b(x)/b(x+nw), evaluated in log
// space. The determinant of the product is accumulated factor by factor
// from the numeric matrix entries, independent of the closed form.
double det_identity_residual(const CocycleSpec& spec, double x, long n);

// Slack of the two-sided one-shift comparison for g = log||T_n(x)|| -
// log||T_n(x+w)||, with the explicit constant C1 = 2 log C(a,b,E).
struct ShiftSlack {
  double lower = 0.0;
  double upper = 0.0;
  double g = 0.0;
};
ShiftSlack shift_comparison_residual(const CocycleSpec& spec, double x, long n);

// C(a,b,E) >= sup_x ||B(x)||, computed as |E| + sup|a| + 2 sup|b|.
double matrix_norm_bound(const CocycleSpec& spec);

}  // namespace qjl
