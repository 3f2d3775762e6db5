#include "qjl/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "qjl/diophantine.hpp"

namespace qjl {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(unsigned(s[b]))) ++b;
  while (e > b && std::isspace(unsigned(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("bad numeric value for " + key + ": " + v);
  }
}

long to_long(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long n = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return n;
  } catch (const std::exception&) {
    throw ConfigError("bad integer value for " + key + ": " + v);
  }
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// cocycle.a.cos.3 -> coefficient slot; grows the vector as needed.
bool apply_series_key(FourierSeries& f, const std::string& tail,
                      const std::string& key, const std::string& value) {
  if (tail == "const") {
    f.constant = to_double(key, value);
    return true;
  }
  for (const char* basis : {"cos.", "sin."}) {
    if (tail.rfind(basis, 0) != 0) continue;
    const long k = to_long(key, tail.substr(4));
    if (k < 1) throw ConfigError("frequency index must be >= 1 in " + key);
    auto& coeffs = (basis[0] == 'c') ? f.cosine_coeffs : f.sine_coeffs;
    if (std::size_t(k) > coeffs.size()) coeffs.resize(std::size_t(k), 0.0);
    coeffs[std::size_t(k) - 1] = to_double(key, value);
    return true;
  }
  return false;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  cfg.omega = parse_omega(cfg.omega_text);

  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected key = value");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));

    if (key.rfind("cocycle.a.", 0) == 0) {
      if (!apply_series_key(cfg.a, key.substr(10), key, value))
        throw ConfigError("unknown key: " + key);
    } else if (key.rfind("cocycle.b.", 0) == 0) {
      if (!apply_series_key(cfg.b, key.substr(10), key, value))
        throw ConfigError("unknown key: " + key);
    } else if (key == "cocycle.omega") {
      try {
        cfg.omega = parse_omega(value);
      } catch (const std::exception&) {
        throw ConfigError("bad omega: " + value);
      }
      cfg.omega_text = value;
    } else if (key == "cocycle.alpha") {
      cfg.alpha = to_double(key, value);
    } else if (key == "energy.low") {
      cfg.energy_low = to_double(key, value);
    } else if (key == "energy.high") {
      cfg.energy_high = to_double(key, value);
    } else if (key == "energy.count") {
      cfg.energy_count = std::size_t(to_long(key, value));
    } else if (key == "scales") {
      cfg.scales.clear();
      for (const std::string& s : split_list(value))
        cfg.scales.push_back(to_long(key, s));
    } else if (key == "sampler.kind") {
      try {
        cfg.sampler.kind = sampler_kind_from_string(value);
      } catch (const std::exception& e) {
        throw ConfigError(e.what());
      }
    } else if (key == "sampler.count") {
      cfg.sampler.count = std::size_t(to_long(key, value));
    } else if (key == "sampler.offset") {
      if (value == "auto")
        cfg.sampler.offset = std::numeric_limits<double>::quiet_NaN();
      else
        cfg.sampler.offset = to_double(key, value);
    } else if (key == "sampler.seed") {
      cfg.sampler.seed = std::uint64_t(to_long(key, value));
    } else if (key == "deltas") {
      cfg.deltas.clear();
      for (const std::string& s : split_list(value))
        cfg.deltas.push_back(to_double(key, s));
    } else if (key == "seed") {
      cfg.seed = std::uint64_t(to_long(key, value));
    } else {
      throw ConfigError("unknown key: " + key);
    }
  }

  if (cfg.b.is_zero())
    throw ConfigError("cocycle.b must not be identically zero");
  if (!(cfg.omega > 0.0 && cfg.omega < 1.0))
    throw ConfigError("omega must lie in (0,1)");
  if (cfg.energy_count < 1) throw ConfigError("energy.count must be >= 1");
  if (cfg.sampler.count < 1) throw ConfigError("sampler.count must be >= 1");
  if (cfg.scales.empty()) throw ConfigError("scales must not be empty");
  for (long n : cfg.scales)
    if (n < 1) throw ConfigError("scales entries must be >= 1");
  for (double d : cfg.deltas)
    if (!(d > 0.0)) throw ConfigError("deltas must be positive");
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream out;
  auto series = [&](const char* name, const FourierSeries& f) {
    out << "cocycle." << name << ".const = " << format_double(f.constant)
        << "\n";
    for (std::size_t i = 0; i < f.cosine_coeffs.size(); ++i)
      out << "cocycle." << name << ".cos." << (i + 1) << " = "
          << format_double(f.cosine_coeffs[i]) << "\n";
    for (std::size_t i = 0; i < f.sine_coeffs.size(); ++i)
      out << "cocycle." << name << ".sin." << (i + 1) << " = "
          << format_double(f.sine_coeffs[i]) << "\n";
  };
  series("a", cfg.a);
  series("b", cfg.b);
  out << "cocycle.omega = " << cfg.omega_text << "\n";
  out << "cocycle.alpha = " << format_double(cfg.alpha) << "\n";
  out << "energy.low = " << format_double(cfg.energy_low) << "\n";
  out << "energy.high = " << format_double(cfg.energy_high) << "\n";
  out << "energy.count = " << cfg.energy_count << "\n";
  out << "scales = ";
  for (std::size_t i = 0; i < cfg.scales.size(); ++i)
    out << (i ? "," : "") << cfg.scales[i];
  out << "\n";
  out << "sampler.kind = " << to_string(cfg.sampler.kind) << "\n";
  out << "sampler.count = " << cfg.sampler.count << "\n";
  if (std::isnan(cfg.sampler.offset))
    out << "sampler.offset = auto\n";
  else
    out << "sampler.offset = " << format_double(cfg.sampler.offset) << "\n";
  out << "sampler.seed = " << cfg.sampler.seed << "\n";
  out << "deltas = ";
  for (std::size_t i = 0; i < cfg.deltas.size(); ++i)
    out << (i ? "," : "") << format_double(cfg.deltas[i]);
  out << "\n";
  out << "seed = " << cfg.seed << "\n";
  return out.str();
}

CocycleSpec RunConfig::cocycle(double energy) const {
  CocycleSpec spec;
  spec.a = a;
  spec.b = b;
  spec.omega = omega;
  spec.energy = energy;
  return spec;
}

std::vector<double> RunConfig::energy_grid() const {
  std::vector<double> grid;
  grid.reserve(energy_count);
  if (energy_count == 1) {
    grid.push_back(energy_low);
    return grid;
  }
  for (std::size_t i = 0; i < energy_count; ++i)
    grid.push_back(energy_low + (energy_high - energy_low) * double(i) /
                                    double(energy_count - 1));
  return grid;
}

}  // namespace qjl
