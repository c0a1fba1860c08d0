#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "riesz/pipeline.hpp"

#ifndef RIESZ_TOOLS_DIR
#define RIESZ_TOOLS_DIR "tools"
#endif

namespace riesz {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n"), b = s.find_last_not_of(" \t\r\n");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

long to_long(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    long x = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "' expects an integer, got '" + v + "'");
  }
}

double to_double(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "' expects a number, got '" + v + "'");
  }
}

Scalar to_scalar(const std::string& key, const std::string& v, long prec) {
  try {
    return Scalar::from_string(v, prec);
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "' expects a number, got '" + v + "'");
  }
}

}  // namespace

void set_config_value(Config& c, const std::string& raw_key, const std::string& raw_value) {
  std::string key = trim(raw_key), v = trim(raw_value);
  std::replace(key.begin(), key.end(), '-', '_');
  while (!key.empty() && key[0] == '_') key.erase(0, 1);
  if (key == "s") c.s = static_cast<int>(to_long(key, v));
  else if (key == "N" || key == "n_particles") c.N = static_cast<int>(to_long(key, v));
  else if (key == "d") c.d = static_cast<int>(to_long(key, v));
  else if (key == "delta") c.delta = static_cast<int>(to_long(key, v));
  else if (key == "precision_bits") c.precision_bits = to_long(key, v);
  else if (key == "u_mode") c.u_mode = v;
  else if (key == "upper_bound" || key == "B") {
    c.upper_bound = v;
    if (!v.empty()) c.u_mode = "from-upper-bound";
  } else if (key == "u_threshold" || key == "U") {
    c.u_threshold = v;
    if (!v.empty()) c.u_mode = "explicit";
  } else if (key == "m_bound") c.m_bound = v;
  else if (key == "solver_cmd" || key == "solver") c.solver_cmd = v;
  else if (key == "fallback_solver_cmd" || key == "fallback_solver") c.fallback_solver_cmd = v;
  else if (key == "symmetry") {
    if (v == "on" || v == "true" || v == "1") c.symmetry = true;
    else if (v == "off" || v == "false" || v == "0") c.symmetry = false;
    else throw ConfigError("symmetry expects on/off, got '" + v + "'");
  } else if (key == "seed") c.seed = static_cast<std::uint64_t>(to_long(key, v));
  else if (key == "workdir") c.workdir = v;
  else if (key == "solver_tolerance") c.solver_tolerance = to_double(key, v);
  else if (key == "dual_samples") c.dual_samples = static_cast<int>(to_long(key, v));
  else throw ConfigError("unknown config key '" + raw_key + "'");
}

Config parse_config_text(const std::string& text, Config base) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    set_config_value(base, line.substr(0, eq), line.substr(eq + 1));
  }
  return base;
}

Config load_config_file(const std::string& path, Config base) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str(), std::move(base));
}

void Config::validate() const {
  if (s < 1) throw ConfigError("s must be a positive integer");
  if (N < 1) throw ConfigError("N must be positive");
  if (d < 0 || delta < 0) throw ConfigError("d and delta must be nonnegative");
  if (precision_bits < 64) throw ConfigError("precision_bits must be at least 64");
  if (u_mode != "from-upper-bound" && u_mode != "explicit") throw ConfigError("u_mode must be from-upper-bound or explicit");
  if (u_mode == "explicit" && u_threshold.empty()) throw ConfigError("u_mode explicit needs u_threshold");
  if (u_mode == "from-upper-bound" && upper_bound.empty() && N != 5)
    throw ConfigError("upper_bound is required unless N = 5 (bipyramid default)");
  if (!(to_scalar("m_bound", m_bound, precision_bits).sign() > 0)) throw ConfigError("m_bound must be positive");
  if (!(solver_tolerance > 0)) throw ConfigError("solver_tolerance must be positive");
  if (dual_samples < 0) throw ConfigError("dual_samples must be nonnegative");
  if (workdir.empty()) throw ConfigError("workdir must not be empty");
  resolve_U(*this);
}

std::string Config::canonical() const {
  std::ostringstream o;
  o << "s = " << s << "\nN = " << N << "\nd = " << d << "\ndelta = " << delta
    << "\nprecision_bits = " << precision_bits << "\nu_mode = " << u_mode << "\nupper_bound = " << upper_bound
    << "\nu_threshold = " << u_threshold << "\nm_bound = " << m_bound
    << "\nsolver_cmd = " << (solver_cmd.empty() ? default_solver_command() : solver_cmd)
    << "\nfallback_solver_cmd = " << (fallback_solver_cmd.empty() ? default_fallback_solver_command() : fallback_solver_cmd)
    << "\nsymmetry = " << (symmetry ? "on" : "off") << "\nseed = " << seed << "\nworkdir = " << workdir
    << "\nsolver_tolerance = " << solver_tolerance << "\ndual_samples = " << dual_samples << "\n";
  return o.str();
}

std::string Config::hash() const {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : canonical()) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string Config::instance_id() const {
  return "s" + std::to_string(s) + "-N" + std::to_string(N) + "-d" + std::to_string(d) + "-delta" +
         std::to_string(delta) + (symmetry ? "-sym-" : "-nosym-") + hash().substr(0, 8);
}

namespace {
std::string tools_dir() {
  const char* env = std::getenv("RIESZ_TOOLS_DIR");
  return env && *env ? env : RIESZ_TOOLS_DIR;
}
}  // namespace

std::string default_solver_command() { return "python3 " + tools_dir() + "/clarabel_sdpa.py --tol 1e-10 {input} {output}"; }

std::string default_fallback_solver_command() {
  return "python3 " + tools_dir() + "/sdpap_sdpa.py --eps 1e-15 {input} {output}";
}

Scalar resolve_upper_bound(const Config& c) {
  if (!c.upper_bound.empty()) return to_scalar("upper_bound", c.upper_bound, c.precision_bits);
  if (c.N != 5) throw ConfigError("upper_bound is required unless N = 5");
  return energy_bipyramid(c.s, c.precision_bits);
}

Scalar resolve_U(const Config& c) {
  Scalar U(c.precision_bits);
  if (c.u_mode == "explicit") {
    U = to_scalar("u_threshold", c.u_threshold, c.precision_bits);
  } else {
    try {
      U = derive_threshold_U(c.s, resolve_upper_bound(c));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (!(abs(U) < Scalar(1, c.precision_bits))) throw ConfigError("U must lie in (-1, 1)");
  return U;
}

}  // namespace riesz
