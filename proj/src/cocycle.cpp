#include "qjl/cocycle.hpp"

#include <cmath>

namespace qjl {

Mat2 step_matrix_b(const CocycleSpec& spec, double x) {
  const double bx = spec.b(x);
  const double bx1 = spec.b(advance_phase(x, spec.omega));
  return {spec.a(x) - spec.energy, -bx, bx1, 0.0};
}

LogScaledMat2 transfer_product_t(const CocycleSpec& spec, double x, long n) {
  LogScaledMat2 acc = LogScaledMat2::identity();
  double ph = wrap_unit(x);
  double bx = spec.b(ph);
  for (long k = 0; k < n; ++k) {
    const double ph1 = advance_phase(ph, spec.omega);
    const double bx1 = spec.b(ph1);
    const Mat2 step{spec.a(ph) - spec.energy, -bx, bx1, 0.0};
    const Mat2 p = step * acc.unit;
    const double s = p.op_norm();
    if (s == 0.0) throw DegenerateProduct(std::size_t(k));
    acc.unit = p.scaled(1.0 / s);
    acc.log_scale += std::log(s);
    ph = ph1;
    bx = bx1;
  }
  return acc;
}

TransferNorms transfer_norms(const CocycleSpec& spec, double x, long n) {
  TransferNorms out;
  LogScaledMat2 acc = LogScaledMat2::identity();
  double ph = wrap_unit(x);
  double bx = spec.b(ph);
  if (std::abs(bx) < spec.b_floor) throw NearSingularSamplingFunction(ph);
  for (long k = 0; k < n; ++k) {
    const double ph1 = advance_phase(ph, spec.omega);
    const double bx1 = spec.b(ph1);
    if (std::abs(bx1) < spec.b_floor) throw NearSingularSamplingFunction(ph1);
    const Mat2 step{spec.a(ph) - spec.energy, -bx, bx1, 0.0};
    const Mat2 p = step * acc.unit;
    const double s = p.op_norm();
    if (s == 0.0) throw DegenerateProduct(std::size_t(k));
    acc.unit = p.scaled(1.0 / s);
    acc.log_scale += std::log(s);

    const double det_step = step.det();
    out.log_det += std::log(std::abs(det_step));
    if (det_step < 0.0) out.det_sign = -out.det_sign;
    out.corr += std::log(std::abs(bx * bx1));

    ph = ph1;
    bx = bx1;
  }
  out.log_t = acc.log_scale;
  out.end_phase = ph;
  return out;
}

double normalized_log_norm(const CocycleSpec& spec, double x, long n) {
  const TransferNorms tn = transfer_norms(spec, x, n);
  return tn.log_t - 0.5 * tn.corr;
}

double det_identity_residual(const CocycleSpec& spec, double x, long n) {
  double ph = wrap_unit(x);
  const double b0 = spec.b(ph);
  if (std::abs(b0) < spec.b_floor) throw NearSingularSamplingFunction(ph);
  double bx = b0;
  // det M_n accumulated factor by factor: det A_k = det B_k / b(x+(k+1)w)^2,
  // with det B_k taken from the numeric matrix entries.
  double log_det_m = 0.0;
  double sign_m = 1.0;
  for (long k = 0; k < n; ++k) {
    const double ph1 = advance_phase(ph, spec.omega);
    const double bx1 = spec.b(ph1);
    if (std::abs(bx1) < spec.b_floor) throw NearSingularSamplingFunction(ph1);
    const Mat2 step{spec.a(ph) - spec.energy, -bx, bx1, 0.0};
    const double det_step = step.det();
    log_det_m += std::log(std::abs(det_step)) - 2.0 * std::log(std::abs(bx1));
    if (det_step < 0.0) sign_m = -sign_m;
    ph = ph1;
    bx = bx1;
  }
  const double bn = bx;  // b(x + n w)
  const double log_rhs = std::log(std::abs(b0)) - std::log(std::abs(bn));
  const double sign_rhs = (b0 * bn) < 0.0 ? -1.0 : 1.0;
  const double ratio = sign_m * sign_rhs * std::exp(log_det_m - log_rhs);
  return std::abs(ratio - 1.0);
}

double matrix_norm_bound(const CocycleSpec& spec) {
  return std::abs(spec.energy) + sup_abs_bound(spec.a) +
         2.0 * sup_abs_bound(spec.b);
}

ShiftSlack shift_comparison_residual(const CocycleSpec& spec, double x,
                                     long n) {
  const double x0 = wrap_unit(x);
  const double x1 = advance_phase(x0, spec.omega);
  const double b0 = spec.b(x0);
  const double b1 = spec.b(x1);
  if (std::abs(b0) < spec.b_floor) throw NearSingularSamplingFunction(x0);
  if (std::abs(b1) < spec.b_floor) throw NearSingularSamplingFunction(x1);

  const TransferNorms at_x = transfer_norms(spec, x0, n);
  const TransferNorms at_x1 = transfer_norms(spec, x1, n);
  const double g = at_x.log_t - at_x1.log_t;

  // b at x+(n-1)w and x+nw; the product walks the same fused phases.
  double ph = x0;
  for (long k = 0; k + 1 < n; ++k) ph = advance_phase(ph, spec.omega);
  const double bn1 = spec.b(ph);
  const double bn = spec.b(advance_phase(ph, spec.omega));
  if (std::abs(bn1) < spec.b_floor) throw NearSingularSamplingFunction(ph);
  if (std::abs(bn) < spec.b_floor)
    throw NearSingularSamplingFunction(advance_phase(ph, spec.omega));

  const double c1 = 2.0 * std::log(matrix_norm_bound(spec));
  ShiftSlack s;
  s.g = g;
  s.lower = g - (-c1 + std::log(std::abs(b0 * b1)));
  s.upper = (c1 - std::log(std::abs(bn1 * bn))) - g;
  return s;
}

}  // namespace qjl
