#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "rasec/errors.hpp"
#include "rasec/geometry.hpp"
#include "rasec/quadrature.hpp"

// Experiment configuration: flat `key = value` lines grouped under `[section]`
// headers, `#` starts a comment. Every key is optional; omitted keys take the
// reference-setup defaults. See README.md for the full key list.

namespace rasec {

enum class SweepVariable { alpha, p_dbm, r_s, upsilon, K };

inline const char* to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::alpha: return "alpha";
    case SweepVariable::p_dbm: return "p_dbm";
    case SweepVariable::r_s: return "r_s";
    case SweepVariable::upsilon: return "upsilon";
    case SweepVariable::K: return "K";
  }
  return "?";
}

struct Sweep {
  SweepVariable variable = SweepVariable::p_dbm;
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  /// start, start + step, ..., up to stop inclusive (with a 1e-9 step slack).
  std::vector<double> grid() const {
    std::vector<double> g;
    const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
    g.reserve(static_cast<std::size_t>(std::max(0L, n)));
    for (long i = 0; i < n; ++i) g.push_back(start + static_cast<double>(i) * step);
    return g;
  }
};

struct EstimatorConfig {
  std::uint64_t mc_samples = 1'000'000;
  std::uint64_t sop_samples = 10'000'000;
  std::uint64_t seed = 20251018;
  QuadratureSpec quad;
  double tol_alpha = 1e-4;
};

struct ExperimentConfig {
  Scenario scenario;
  bool p_dbm_set = false;  // figures fall back to their own reference power otherwise
  std::optional<double> alpha;
  double r_s = 1.0;
  std::optional<Sweep> sweep;
  EstimatorConfig estimator;
  std::string output_path;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double parse_double(std::string_view v, int line, std::string_view key) {
  const std::string str(v);
  char* end = nullptr;
  const double d = std::strtod(str.c_str(), &end);
  if (str.empty() || end != str.c_str() + str.size())
    throw ParseError(line, "expected a number for '" + std::string(key) + "', got '" + str + "'");
  return d;
}

inline std::uint64_t parse_count(std::string_view v, int line, std::string_view key) {
  // Accept 1e6-style literals as long as they are exact nonnegative integers.
  const double d = parse_double(v, line, key);
  if (!(d >= 0.0) || d != std::floor(d) || d > 1.8e19)
    throw ParseError(line, "expected a nonnegative integer for '" + std::string(key) + "'");
  std::uint64_t out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec == std::errc() && res.ptr == v.data() + v.size()) return out;
  return static_cast<std::uint64_t>(d);
}

inline Vec3 parse_vec3(std::string_view v, int line, std::string_view key) {
  double xyz[3];
  std::size_t pos = 0;
  for (int i = 0; i < 3; ++i) {
    const auto comma = v.find(',', pos);
    if ((i < 2) != (comma != std::string_view::npos))
      throw ParseError(line, "expected three comma-separated numbers for '" + std::string(key) + "'");
    const auto part = trim(v.substr(pos, comma == std::string_view::npos ? v.npos : comma - pos));
    xyz[i] = parse_double(part, line, key);
    pos = comma + 1;
  }
  return {xyz[0], xyz[1], xyz[2]};
}

inline std::string fmt_exact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

/// Checks every cross-field invariant; throws ValidationError naming the first violation.
inline void validate(const ExperimentConfig& cfg) {
  validate(cfg.scenario);
  if (cfg.sweep) {
    if (!(cfg.sweep->step > 0.0)) throw ValidationError("sweep step must be > 0");
    if (!(cfg.sweep->stop >= cfg.sweep->start)) throw ValidationError("sweep grid is empty (stop < start)");
  }
  if (cfg.estimator.mc_samples < 1 || cfg.estimator.sop_samples < 1)
    throw ValidationError("sample counts must be >= 1");
  check(cfg.estimator.quad);
  if (!(cfg.estimator.tol_alpha > 0.0)) throw ValidationError("tol_alpha must be > 0");
  if (!(cfg.r_s >= 0.0)) throw ValidationError("r_s must be >= 0");
  if (cfg.alpha && !(*cfg.alpha >= 1.0)) throw ValidationError("alpha must be >= 1");
}

inline ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  Scenario& s = cfg.scenario;
  std::string section;
  std::optional<double> d_b, up_b, d_e, up_e;
  bool q_b_set = false, q_e_set = false;
  std::optional<Sweep> sweep;
  bool sweep_var = false, sweep_start = false, sweep_stop = false, sweep_step = false;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const auto line = detail::trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(line_no, "unterminated section header");
      section = std::string(detail::trim(line.substr(1, line.size() - 2)));
      if (section != "scenario" && section != "sweep" && section != "estimator" && section != "experiment" &&
          section != "output")
        throw ParseError(line_no, "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'key = value'");
    const std::string key(detail::trim(line.substr(0, eq)));
    const auto value = detail::trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(line_no, "missing key");
    if (section.empty()) throw ParseError(line_no, "key '" + key + "' outside of any [section]");
    auto num = [&] { return detail::parse_double(value, line_no, key); };
    auto unknown = [&] { return ParseError(line_no, "unknown key '" + key + "' in [" + section + "]"); };

    if (section == "scenario") {
      if (key == "q_b") { s.q_b = detail::parse_vec3(value, line_no, key); q_b_set = true; }
      else if (key == "q_e") { s.q_e = detail::parse_vec3(value, line_no, key); q_e_set = true; }
      else if (key == "d_b") d_b = num();
      else if (key == "upsilon_b") up_b = num();
      else if (key == "d_e") d_e = num();
      else if (key == "upsilon_e" || key == "upsilon") up_e = num();
      else if (key == "zeta_0") s.zeta_0 = num();
      else if (key == "beta") s.beta_b = s.beta_e = num();
      else if (key == "beta_b") s.beta_b = num();
      else if (key == "beta_e") s.beta_e = num();
      else if (key == "K") s.K_b = s.K_e = num();
      else if (key == "K_b") s.K_b = num();
      else if (key == "K_e") s.K_e = num();
      else if (key == "G_0") s.G_0 = num();
      else if (key == "lambda") s.lambda = num();
      else if (key == "sigma2_dbm") s.sigma2_dbm = num();
      else if (key == "p_dbm") { s.p_dbm = num(); cfg.p_dbm_set = true; }
      else throw unknown();
    } else if (section == "sweep") {
      if (!sweep) sweep = Sweep{};
      if (key == "variable") {
        const std::string v(value);
        if (v == "alpha") sweep->variable = SweepVariable::alpha;
        else if (v == "p_dbm") sweep->variable = SweepVariable::p_dbm;
        else if (v == "r_s") sweep->variable = SweepVariable::r_s;
        else if (v == "upsilon") sweep->variable = SweepVariable::upsilon;
        else if (v == "K") sweep->variable = SweepVariable::K;
        else throw ParseError(line_no, "unknown sweep variable '" + v + "'");
        sweep_var = true;
      } else if (key == "start") { sweep->start = num(); sweep_start = true; }
      else if (key == "stop") { sweep->stop = num(); sweep_stop = true; }
      else if (key == "step") { sweep->step = num(); sweep_step = true; }
      else throw unknown();
    } else if (section == "estimator") {
      auto& e = cfg.estimator;
      if (key == "mc_samples") e.mc_samples = detail::parse_count(value, line_no, key);
      else if (key == "sop_samples") e.sop_samples = detail::parse_count(value, line_no, key);
      else if (key == "seed") e.seed = detail::parse_count(value, line_no, key);
      else if (key == "quad_abs_tol") e.quad.abs_tol = num();
      else if (key == "quad_rel_tol") e.quad.rel_tol = num();
      else if (key == "quad_max_subdivisions") e.quad.max_subdivisions = static_cast<int>(detail::parse_count(value, line_no, key));
      else if (key == "tol_alpha") e.tol_alpha = num();
      else throw unknown();
    } else if (section == "experiment") {
      if (key == "alpha") cfg.alpha = num();
      else if (key == "r_s") cfg.r_s = num();
      else throw unknown();
    } else if (section == "output") {
      if (key == "path") cfg.output_path = std::string(value);
      else throw unknown();
    }
  }

  if (q_b_set && (d_b || up_b)) throw ValidationError("give either q_b or d_b/upsilon_b, not both");
  if (q_e_set && (d_e || up_e)) throw ValidationError("give either q_e or d_e/upsilon_e, not both");
  if (d_b || up_b) s.q_b = xz_position(d_b.value_or(50.0), up_b.value_or(60.0));
  if (d_e || up_e) s.q_e = xz_position(d_e.value_or(70.0), up_e.value_or(30.0));
  if (sweep) {
    if (!sweep_var || !sweep_start || !sweep_stop || !sweep_step)
      throw ValidationError("[sweep] needs variable, start, stop and step");
    cfg.sweep = sweep;
  }
  validate(cfg);
  return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

/// Resolved configuration in the same key = value format (parses back to an equal config).
inline std::string to_text(const ExperimentConfig& cfg) {
  using detail::fmt_exact;
  const Scenario& s = cfg.scenario;
  std::ostringstream o;
  auto vec = [](const Vec3& v) { return fmt_exact(v.x) + ", " + fmt_exact(v.y) + ", " + fmt_exact(v.z); };
  o << "[scenario]\n";
  o << "q_b = " << vec(s.q_b) << "\n";
  o << "q_e = " << vec(s.q_e) << "\n";
  o << "zeta_0 = " << fmt_exact(s.zeta_0) << "\n";
  o << "beta_b = " << fmt_exact(s.beta_b) << "\n";
  o << "beta_e = " << fmt_exact(s.beta_e) << "\n";
  o << "K_b = " << fmt_exact(s.K_b) << "\n";
  o << "K_e = " << fmt_exact(s.K_e) << "\n";
  o << "G_0 = " << fmt_exact(s.G_0) << "\n";
  o << "lambda = " << fmt_exact(s.lambda) << "\n";
  o << "sigma2_dbm = " << fmt_exact(s.sigma2_dbm) << "\n";
  if (cfg.p_dbm_set) o << "p_dbm = " << fmt_exact(s.p_dbm) << "\n";
  o << "[experiment]\n";
  if (cfg.alpha) o << "alpha = " << fmt_exact(*cfg.alpha) << "\n";
  o << "r_s = " << fmt_exact(cfg.r_s) << "\n";
  if (cfg.sweep) {
    o << "[sweep]\n";
    o << "variable = " << to_string(cfg.sweep->variable) << "\n";
    o << "start = " << fmt_exact(cfg.sweep->start) << "\n";
    o << "stop = " << fmt_exact(cfg.sweep->stop) << "\n";
    o << "step = " << fmt_exact(cfg.sweep->step) << "\n";
  }
  const auto& e = cfg.estimator;
  o << "[estimator]\n";
  o << "mc_samples = " << e.mc_samples << "\n";
  o << "sop_samples = " << e.sop_samples << "\n";
  o << "seed = " << e.seed << "\n";
  o << "quad_abs_tol = " << fmt_exact(e.quad.abs_tol) << "\n";
  o << "quad_rel_tol = " << fmt_exact(e.quad.rel_tol) << "\n";
  o << "quad_max_subdivisions = " << e.quad.max_subdivisions << "\n";
  o << "tol_alpha = " << fmt_exact(e.tol_alpha) << "\n";
  if (!cfg.output_path.empty()) o << "[output]\npath = " << cfg.output_path << "\n";
  return o.str();
}

}  // namespace rasec
