// qjl: finite-scale and limiting Lyapunov exponents of quasi-periodic
// Jacobi cocycles, with deviation-set measurement and Holder regression.
// Outputs are deterministic: identical config + seed + any thread count
// give byte-identical CSV/JSON.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qjl/avalanche.hpp"
#include "qjl/config.hpp"
#include "qjl/diophantine.hpp"
#include "qjl/ldt.hpp"
#include "qjl/lyapunov.hpp"
#include "qjl/reduce.hpp"

using json = nlohmann::ordered_json;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitPositivity = 4;
constexpr int kExitDeterminant = 5;

void write_text(const std::optional<std::string>& path,
                const std::string& text) {
  if (path) {
    std::ofstream out(*path, std::ios::binary);
    if (!out) throw qjl::ConfigError("cannot open output file: " + *path);
    out << text;
  } else {
    std::cout << text;
  }
}

std::string fd(double v) { return qjl::format_double(v); }

int cmd_lyapunov(const qjl::RunConfig& cfg,
                 const std::optional<std::string>& out) {
  std::ostringstream csv;
  csv << "energy,n,l_n,std_err,l_accel,doubling_gap,dropped_measure\n";
  for (double e : cfg.energy_grid()) {
    const qjl::CocycleSpec spec = cfg.cocycle(e);
    for (long n : cfg.scales) {
      const qjl::LimitEstimate lim =
          qjl::accelerated_limit(spec, n, cfg.sampler);
      const qjl::ScaleEstimate& base = lim.ladder.front();
      csv << fd(e) << ',' << n << ',' << fd(base.l_n) << ','
          << fd(base.std_err) << ',' << fd(lim.l_inf) << ','
          << fd(lim.doubling_gap) << ',' << fd(base.dropped_measure) << "\n";
    }
  }
  write_text(out, csv.str());
  return 0;
}

int cmd_holder(const qjl::RunConfig& cfg,
               const std::optional<std::string>& out) {
  const std::vector<double> grid = cfg.energy_grid();
  if (grid.size() < 8)
    throw qjl::InsufficientData("holder needs an energy grid of >= 8 points");
  const qjl::HolderFit fit =
      qjl::holder_fit(cfg.cocycle(0.0), grid, cfg.scales.front(), cfg.sampler);
  json j;
  j["beta"] = fit.beta;
  j["raw_slope"] = fit.raw_slope;
  j["intercept"] = fit.intercept;
  j["r_squared"] = fit.r_squared;
  j["window"] = {fit.window_low, fit.window_high};
  j["pair_count"] = fit.pair_count;
  j["positivity_ok"] = true;
  write_text(out, j.dump(2) + "\n");
  return 0;
}

int cmd_ldt(const qjl::RunConfig& cfg, const std::optional<std::string>& out,
            const std::optional<std::string>& json_out,
            std::optional<double> synthetic_rate) {
  if (cfg.scales.size() < 2)
    throw qjl::ConfigError("ldt needs at least 2 scales");

  std::vector<qjl::DeviationHistogram> hists;
  for (long n : cfg.scales) {
    if (synthetic_rate) {
      // Documented test mode: inject exact measures exp(-c delta^2 N) so the
      // rate fit can be validated against a known constant.
      qjl::DeviationHistogram h;
      h.n = n;
      h.samples = cfg.sampler.count;
      for (double d : cfg.deltas)
        h.deviation_measures.emplace_back(
            d, std::exp(-*synthetic_rate * d * d * double(n)));
      hists.push_back(std::move(h));
    } else {
      hists.push_back(qjl::deviation_histogram(cfg.cocycle(cfg.energy_low), n,
                                               cfg.sampler, cfg.deltas));
    }
  }

  std::ostringstream csv;
  csv << "n,delta,measure\n";
  for (const auto& h : hists)
    for (const auto& [delta, measure] : h.deviation_measures)
      csv << h.n << ',' << fd(delta) << ',' << fd(measure) << "\n";
  write_text(out, csv.str());

  const qjl::RateFit fit = qjl::fit_deviation_rate(hists);
  json j;
  j["fitted_c"] = fit.fitted_c;
  j["fit_quality"] = fit.fit_quality;
  j["intercept"] = fit.intercept;
  j["censored"] = fit.censored;
  write_text(json_out, j.dump(2) + "\n");
  return 0;
}

int cmd_diophantine(const std::string& omega_text, double alpha, long n_max,
                    const std::optional<std::string>& out) {
  double omega;
  try {
    omega = qjl::parse_omega(omega_text);
  } catch (const std::exception&) {
    throw qjl::ConfigError("bad omega: " + omega_text);
  }
  if (!(omega > 0.0 && omega < 1.0))
    throw qjl::ConfigError("omega must lie in (0,1)");
  if (!(alpha > 1.0)) throw qjl::ConfigError("alpha must be > 1");
  if (n_max < 2) throw qjl::ConfigError("nmax must be >= 2");
  const qjl::DiophantineReport rep =
      qjl::diophantine_margin(omega, alpha, n_max);
  json j;
  j["omega"] = rep.omega;
  j["alpha"] = rep.alpha;
  j["n_max"] = rep.n_max;
  j["worst_n"] = rep.worst_n;
  j["margin"] = rep.margin;
  j["is_rational"] = rep.is_rational;
  write_text(out, j.dump(2) + "\n");
  return 0;
}

int cmd_ap_verify(const std::string& file,
                  const std::optional<std::string>& out) {
  std::ifstream in(file);
  if (!in) throw qjl::ConfigError("cannot open matrix file: " + file);
  std::vector<qjl::Mat2> mats;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(line);
    qjl::Mat2 m;
    if (!(ss >> m.m00 >> m.m01 >> m.m10 >> m.m11))
      throw qjl::ConfigError("line " + std::to_string(lineno) +
                             ": expected four decimals, row-major");
    double extra;
    if (ss >> extra)
      throw qjl::ConfigError("line " + std::to_string(lineno) +
                             ": trailing fields");
    mats.push_back(m);
  }
  if (mats.size() < 3)
    throw qjl::ConfigError("matrix file must hold at least 3 matrices");

  const qjl::ApVerdict v = qjl::ap_verify(mats);
  json j;
  j["lhs"] = v.lhs;
  j["bound_ratio"] = v.bound_ratio;
  j["hypotheses_met"] = v.hypotheses_met;
  j["mu"] = v.mu;
  j["n"] = v.n;
  j["direct_log_norm"] = v.direct_log_norm;
  j["estimate"] = v.estimate;
  write_text(out, j.dump(2) + "\n");
  return 0;
}

int cmd_birkhoff(const qjl::RunConfig& cfg,
                 const std::optional<std::string>& out) {
  const qjl::BirkhoffField bf = qjl::birkhoff_field(
      cfg.cocycle(cfg.energy_low), cfg.scales.front(), cfg.sampler, cfg.deltas);
  json j;
  j["n"] = bf.n;
  j["mean"] = bf.mean;
  j["min"] = bf.min;
  j["max"] = bf.max;
  j["d"] = bf.d_used;
  json dm = json::array();
  for (const auto& [delta, measure] : bf.deviation_measures)
    dm.push_back({{"delta", delta}, {"measure", measure}});
  j["deviation_measures"] = dm;
  write_text(out, j.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quasi-periodic Jacobi cocycle numerics"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> out_path, json_out_path;
  unsigned threads = 0;
  std::optional<std::uint64_t> seed;
  app.add_option("--config", config_path, "run configuration file");
  app.add_option("--out", out_path, "primary output path (default stdout)");
  app.add_option("--json-out", json_out_path,
                 "secondary JSON output path (ldt only, default stdout)");
  app.add_option("--threads", threads,
                 "worker threads (default all cores; result-invariant)");
  app.add_option("--seed", seed, "override the sampler seed");

  auto* lyap = app.add_subcommand("lyapunov", "finite-scale and accelerated L");
  auto* holder = app.add_subcommand("holder", "Holder exponent regression");
  auto* ldt = app.add_subcommand("ldt", "large-deviation measures and rate");
  std::optional<double> synthetic_rate;
  ldt->add_option("--synthetic-rate", synthetic_rate,
                  "inject measures exp(-c delta^2 N) instead of sampling");
  auto* dio = app.add_subcommand("diophantine", "audit the frequency");
  std::string omega_text = "golden";
  double alpha = 2.0;
  long n_max = 10000;
  dio->add_option("--omega", omega_text, "frequency (decimal|golden|sqrt2m1)");
  dio->add_option("--alpha", alpha, "Diophantine exponent (> 1)");
  dio->add_option("--nmax", n_max, "audit horizon");
  auto* apv = app.add_subcommand("ap-verify", "avalanche-principle verdict");
  std::string matrix_file;
  apv->add_option("file", matrix_file, "matrix file, 4 decimals per line")
      ->required();
  auto* birk = app.add_subcommand("birkhoff", "Birkhoff field diagnostics");

  // global options (--out, --config, ...) may follow the subcommand name
  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);
  qjl::set_max_threads(threads);

  try {
    if (dio->parsed()) return cmd_diophantine(omega_text, alpha, n_max, out_path);
    if (apv->parsed()) return cmd_ap_verify(matrix_file, out_path);

    if (config_path.empty())
      throw qjl::ConfigError("--config is required for this command");
    qjl::RunConfig cfg = qjl::load_config_file(config_path);
    if (seed) {
      cfg.seed = *seed;
      cfg.sampler.seed = *seed;
    }

    if (lyap->parsed()) return cmd_lyapunov(cfg, out_path);
    if (holder->parsed()) return cmd_holder(cfg, out_path);
    if (ldt->parsed()) return cmd_ldt(cfg, out_path, json_out_path, synthetic_rate);
    if (birk->parsed()) return cmd_birkhoff(cfg, out_path);
    return kExitConfig;
  } catch (const qjl::PositivityViolated& e) {
    std::cerr << "error: " << e.what() << ";";
    for (double v : e.energies) std::cerr << ' ' << qjl::format_double(v);
    std::cerr << "\n";
    return kExitPositivity;
  } catch (const qjl::DeterminantTooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDeterminant;
  } catch (const qjl::TooManyDegenerateSamples& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const qjl::DegenerateProduct& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}
