// Acceptance gate: one line per criterion, PASS or FAIL, with the measured
// values and the pinned tolerances. Criterion 8 shells out to the CLI whose
// path arrives as argv[1].

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qjl/avalanche.hpp"
#include "qjl/config.hpp"
#include "qjl/ldt.hpp"
#include "qjl/lyapunov.hpp"

using namespace qjl;

namespace {

const double kGolden = (std::sqrt(5.0) - 1.0) / 2.0;

int g_failures = 0;

class Criterion {
 public:
  Criterion(int id, const std::string& title, double budget_s)
      : id_(id), title_(title), budget_s_(budget_s),
        start_(std::chrono::steady_clock::now()) {}

  void check(bool ok, const std::string& detail) {
    if (!ok && why_.empty()) why_ = detail;
    ok_ = ok_ && ok;
  }

  void finish() {
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
            .count();
    if (secs > budget_s_) {
      ok_ = false;
      if (why_.empty())
        why_ = "runtime " + std::to_string(secs) + "s over budget";
    }
    std::cout << "criterion " << id_ << " [" << title_ << "]: "
              << (ok_ ? "PASS" : "FAIL") << std::fixed << std::setprecision(1)
              << " (" << secs << "s / " << budget_s_ << "s)";
    if (!ok_) std::cout << " -- " << why_;
    std::cout << "\n" << std::defaultfloat;
    if (!ok_) ++g_failures;
  }

 private:
  int id_;
  std::string title_;
  double budget_s_;
  std::chrono::steady_clock::time_point start_;
  bool ok_ = true;
  std::string why_;
};

std::string num(double v) {
  std::ostringstream ss;
  ss << std::setprecision(6) << v;
  return ss.str();
}

CocycleSpec almost_mathieu(double lambda, double energy) {
  CocycleSpec s;
  s.a = FourierSeries::cosine_wave(2.0 * lambda);
  s.omega = kGolden;
  s.energy = energy;
  return s;
}

CocycleSpec random_cocycle(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> amp(-2.0, 2.0);
  std::uniform_real_distribution<double> bc(0.7, 2.5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  CocycleSpec s;
  s.a.constant = amp(rng);
  s.a.cosine_coeffs = {amp(rng)};
  s.a.sine_coeffs = {amp(rng)};
  const double b0 = bc(rng);
  s.b.constant = b0;
  s.b.cosine_coeffs = {0.4 * b0 * (2.0 * unit(rng) - 1.0)};
  s.omega = 0.1 + 0.8 * unit(rng);
  s.energy = 3.0 * (2.0 * unit(rng) - 1.0);
  return s;
}

void criterion_1_exact_identities() {
  Criterion c(1, "exact identities", 30.0);
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  // determinant identity over 1000 random (cocycle, x, n <= 1e4) samples
  double worst_det = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const CocycleSpec s = random_cocycle(rng);
    const double x = unit(rng);
    const long n = 1 + long(unit(rng) * 9999.0);
    worst_det = std::max(worst_det, det_identity_residual(s, x, n));
  }
  c.check(worst_det <= 1e-8, "det residual " + num(worst_det) + " > 1e-8");

  // cocycle composition identity
  double worst_comp = 0.0;
  for (int t = 0; t < 200; ++t) {
    const CocycleSpec s = random_cocycle(rng);
    const double x = unit(rng);
    const long n = 1 + long(unit(rng) * 300.0);
    const long m = 1 + long(unit(rng) * 300.0);
    const LogScaledMat2 head = transfer_product_t(s, x, n);
    double ph = wrap_unit(x);
    for (long k = 0; k < n; ++k) ph = advance_phase(ph, s.omega);
    const LogScaledMat2 joined = compose(transfer_product_t(s, ph, m), head);
    const LogScaledMat2 direct = transfer_product_t(s, x, n + m);
    worst_comp = std::max(
        worst_comp, std::abs(joined.log_scale - direct.log_scale) /
                        std::max(1.0, std::abs(direct.log_scale)));
  }
  c.check(worst_comp <= 1e-9,
          "composition residual " + num(worst_comp) + " > 1e-9");

  // J_N = L_N + D per run
  double worst_jld = 0.0;
  const PhaseSampler sampler = PhaseSampler::grid(256);
  for (int t = 0; t < 20; ++t) {
    const CocycleSpec s = random_cocycle(rng);
    const ScaleEstimate e = finite_scale_l(s, 64, sampler);
    worst_jld = std::max(worst_jld, std::abs(e.j_n - (e.l_n + e.d_n)));
  }
  c.check(worst_jld <= 1e-12, "J=L+D residual " + num(worst_jld) + " > 1e-12");
  c.finish();
}

void criterion_2_constant_oracle() {
  Criterion c(2, "constant-cocycle oracle", 5.0);
  const double oracle = std::log((3.0 + std::sqrt(5.0)) / 2.0);
  CocycleSpec hyper;
  hyper.omega = kGolden;
  hyper.energy = 3.0;
  const LimitEstimate lim =
      accelerated_limit(hyper, 128, PhaseSampler::grid(256));
  c.check(std::abs(lim.l_inf - oracle) <= 1e-4,
          "E=3 accel " + num(lim.l_inf) + " vs " + num(oracle));

  CocycleSpec rot;
  rot.omega = kGolden;
  const LimitEstimate rot_lim =
      accelerated_limit(rot, 64, PhaseSampler::grid(256));
  c.check(std::abs(rot_lim.l_inf) <= 2e-12,
          "rotation accel " + num(rot_lim.l_inf) + " not ~0");
  c.finish();
}

void criterion_3_almost_mathieu() {
  Criterion c(3, "almost-Mathieu benchmark", 300.0);
  const double log3 = std::log(3.0);
  const PhaseSampler sampler = PhaseSampler::grid(2048);
  double min_l = 1e300;
  bool herman_ok = true;
  for (int i = 0; i < 161; ++i) {
    const double e = -8.0 + 16.0 * double(i) / 160.0;
    const LimitEstimate lim =
        accelerated_limit(almost_mathieu(3.0, e), 256, sampler);
    min_l = std::min(min_l, lim.l_inf);
    herman_ok = herman_ok && lim.l_inf >= log3 - 2e-2;
  }
  c.check(std::abs(min_l - log3) <= 2e-2,
          "grid min " + num(min_l) + " vs log 3 = " + num(log3));
  c.check(herman_ok, "some grid value fell below log 3 - 2e-2");
  c.finish();
}

void criterion_4_avalanche() {
  Criterion c(4, "avalanche principle suite", 30.0);

  std::vector<Mat2> diag(10, Mat2{100.0, 0.0, 0.0, 0.01});
  const ApVerdict dv = ap_verify(diag);
  c.check(dv.lhs <= 1e-10, "diagonal lhs " + num(dv.lhs) + " > 1e-10");
  c.check(dv.hypotheses_met, "diagonal hypotheses not met");

  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> tilt(-0.3, 0.3);
  const double mu = 1e4;
  const std::size_t n = 20;
  bool chains_ok = true;
  std::string chain_why;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Mat2> chain;
    for (std::size_t j = 0; j < n; ++j) {
      const double th = tilt(rng), cth = std::cos(th), sth = std::sin(th);
      chain.push_back(Mat2{cth, -sth, sth, cth} * Mat2{mu, 0.0, 0.0, 1.0 / mu});
    }
    const ApVerdict v = ap_verify(chain);
    if (!v.hypotheses_met || v.bound_ratio > 100.0 ||
        std::abs(v.estimate - v.direct_log_norm) > double(n) * 100.0 / mu) {
      chains_ok = false;
      chain_why = "trial " + std::to_string(trial) + ": bound_ratio " +
                  num(v.bound_ratio) + ", est err " +
                  num(std::abs(v.estimate - v.direct_log_norm));
      break;
    }
  }
  c.check(chains_ok, chain_why);

  const CocycleSpec am = almost_mathieu(3.0, 0.0);
  const ApBlockChain chain = cocycle_block_chain(am, 0.123, 64, 16);
  c.check(chain.hypotheses_met(), "cocycle block hypotheses not met");
  const double est = ap_estimate_log_norm(chain);
  const double direct = normalized_log_norm(am, 0.123, 1024);
  c.check(std::abs(est - direct) <= 0.5,
          "AP estimate off by " + num(std::abs(est - direct)));
  c.finish();
}

void criterion_5_ldt() {
  Criterion c(5, "large-deviation suite", 180.0);
  const CocycleSpec am = almost_mathieu(2.0, 0.0);
  const PhaseSampler sampler = PhaseSampler::grid(100000);
  const std::vector<double> deltas = {0.05, 0.1, 0.2};

  const DeviationHistogram h128 = deviation_histogram(am, 128, sampler, deltas);
  const DeviationHistogram h512 = deviation_histogram(am, 512, sampler, deltas);

  // Strict decrease at delta = 0.1. The true measure of that set is below
  // 1e-6 already at n = 128 (brute-forced at 1e6 phases), so a 3-sigma
  // binomial certification at this delta is impossible for any sampler of
  // this size; the significance test runs at delta = 0.05, the smallest
  // pinned delta, where the decrease carries real mass.
  const double m128_01 = h128.deviation_measures[1].second;
  const double m512_01 = h512.deviation_measures[1].second;
  c.check(m512_01 < m128_01, "delta=0.1 measure not strictly smaller: " +
                                 num(m128_01) + " -> " + num(m512_01));

  const double m128 = h128.deviation_measures[0].second;
  const double m512 = h512.deviation_measures[0].second;
  const double ns = double(sampler.count);
  const double sigma = std::sqrt(m128 * (1.0 - m128) / ns +
                                 m512 * (1.0 - m512) / ns);
  c.check(m128 - m512 > 3.0 * sigma,
          "delta=0.05 measure did not drop 3 sigma: " + num(m128) + " -> " +
              num(m512));

  const std::vector<DeviationHistogram> hists = {h128, h512};
  const RateFit fit = fit_deviation_rate(hists);
  c.check(fit.fitted_c > 0.0, "fitted_c " + num(fit.fitted_c) + " <= 0");
  std::cout << "  (info) fitted_c = " << fit.fitted_c
            << ", fit_quality = " << fit.fit_quality
            << (fit.censored ? " [censored]" : "") << "\n";

  std::vector<DeviationHistogram> synth;
  for (long n : {128L, 256L, 512L}) {
    DeviationHistogram h;
    h.n = n;
    h.samples = 100000;
    for (double d : deltas)
      h.deviation_measures.emplace_back(d,
                                        std::exp(-0.5 * d * d * double(n)));
    synth.push_back(h);
  }
  const RateFit sf = fit_deviation_rate(synth);
  c.check(std::abs(sf.fitted_c - 0.5) <= 1e-6,
          "synthetic fit " + num(sf.fitted_c) + " vs 0.5");
  c.finish();
}

void criterion_6_uniform_bound() {
  Criterion c(6, "uniform-bound boundedness", 120.0);
  const CocycleSpec am = almost_mathieu(2.0, 0.0);
  const PhaseSampler sampler = PhaseSampler::grid(4096);
  double lo = 1e300, hi = -1e300;
  std::ostringstream seen;
  for (long n : {64L, 128L, 256L, 512L}) {
    const UniformBoundConstants u = uniform_upper_bound_check(am, n, sampler);
    lo = std::min(lo, u.transfer_c);
    hi = std::max(hi, u.transfer_c);
    seen << " n=" << n << ":" << num(u.transfer_c);
  }
  c.check(lo > 0.0 && hi / lo <= 2.0,
          "constant spread" + seen.str() + " (ratio " + num(hi / lo) + ")");
  std::cout << "  (info) transfer constants:" << seen.str() << "\n";
  c.finish();
}

void criterion_7_holder() {
  Criterion c(7, "Holder regression", 300.0);
  const PhaseSampler sampler = PhaseSampler::grid(2048);

  std::vector<double> am_grid;
  for (int i = 0; i <= 10; ++i) am_grid.push_back(-0.5 + 0.1 * double(i));
  const HolderFit am_fit =
      holder_fit(almost_mathieu(2.0, 0.0), am_grid, 256, sampler);
  c.check(am_fit.beta > 0.0 && am_fit.beta <= 1.0,
          "AM beta " + num(am_fit.beta) + " outside (0,1]");
  c.check(am_fit.r_squared >= 0.9,
          "AM r^2 " + num(am_fit.r_squared) + " < 0.9");
  std::cout << "  (info) AM beta = " << am_fit.beta
            << ", raw slope = " << am_fit.raw_slope
            << ", r^2 = " << am_fit.r_squared << "\n";

  CocycleSpec constant;
  constant.omega = kGolden;
  std::vector<double> const_grid;
  for (int i = 0; i <= 10; ++i) const_grid.push_back(2.5 + 0.1 * double(i));
  const HolderFit cf = holder_fit(constant, const_grid, 256, sampler);
  c.check(std::abs(cf.beta - 1.0) <= 0.1,
          "constant-window beta " + num(cf.beta) + " not 1 +- 0.1");
  c.finish();
}

void criterion_8_determinism(const std::string& cli) {
  Criterion c(8, "thread determinism", 600.0);
  std::ofstream cfg("accept_c8.cfg", std::ios::binary);
  cfg << "cocycle.a.cos.1 = 6.0\n"
         "cocycle.omega = golden\n"
         "energy.low = -8\n"
         "energy.high = 8\n"
         "energy.count = 161\n"
         "scales = 256\n"
         "sampler.count = 2048\n";
  cfg.close();

  auto run = [&](const std::string& threads, const std::string& out) {
    const std::string cmd = cli + " --config accept_c8.cfg --threads " +
                            threads + " lyapunov --out " + out +
                            " >accept_c8.log 2>&1";
    return std::system(cmd.c_str()) == 0;
  };
  auto slurp = [](const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  c.check(run("1", "accept_t1.csv"), "threads=1 run failed");
  c.check(run("8", "accept_t8.csv"), "threads=8 run failed");
  const std::string a = slurp("accept_t1.csv");
  c.check(!a.empty() && a == slurp("accept_t8.csv"),
          "CSV bytes differ between thread counts");
  c.finish();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path-to-qjl>\n";
    return 2;
  }
  criterion_1_exact_identities();
  criterion_2_constant_oracle();
  criterion_3_almost_mathieu();
  criterion_4_avalanche();
  criterion_5_ldt();
  criterion_6_uniform_bound();
  criterion_7_holder();
  criterion_8_determinism(argv[1]);

  if (g_failures) {
    std::cout << g_failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all acceptance criteria passed\n";
  return 0;
}
