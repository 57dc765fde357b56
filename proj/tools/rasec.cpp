#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "rasec/rasec.hpp"

namespace {

enum ExitCode : int { kOk = 0, kInternal = 1, kConfig = 2, kNonConvergent = 3 };

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> samples;
  std::optional<double> tol;
};

rasec::ExperimentConfig load(const std::string& path, const Overrides& o) {
  rasec::ExperimentConfig cfg = rasec::load_config(path);
  if (o.seed) cfg.estimator.seed = *o.seed;
  if (o.samples) cfg.estimator.mc_samples = cfg.estimator.sop_samples = *o.samples;
  if (o.tol) cfg.estimator.quad.abs_tol = cfg.estimator.quad.rel_tol = *o.tol;
  rasec::validate(cfg);
  return cfg;
}

void kv(const char* key, double v) { std::cout << key << " = " << rasec::format_value(v) << "\n"; }
void kv(const char* key, const std::string& v) { std::cout << key << " = " << v << "\n"; }
void kv(const char* key, std::uint64_t v) { std::cout << key << " = " << v << "\n"; }

double gamma_to_dbm(double gamma, double sigma2_dbm) { return 10.0 * std::log10(gamma) + sigma2_dbm; }

int cmd_validate(const rasec::ExperimentConfig& cfg) {
  std::cout << rasec::to_text(cfg);
  if (!cfg.p_dbm_set) std::cout << "# p_dbm not set: single-point commands use " << cfg.scenario.p_dbm
                                << ", figures use their own reference power\n";
  std::cout << "# alpha_max = " << rasec::format_value(rasec::alpha_max(cfg.scenario)) << "\n";
  std::cout << "# valid\n";
  return kOk;
}

int cmd_optimize(const rasec::ExperimentConfig& cfg) {
  const auto& s = cfg.scenario;
  const rasec::OptResult r = rasec::optimize_alpha(s, cfg.estimator.tol_alpha, cfg.estimator.quad);
  kv("alpha_opt", r.alpha_opt);
  kv("avg_secrecy_capacity", r.value.value);
  kv("alpha_max", rasec::alpha_max(s));
  kv("tol_alpha", cfg.estimator.tol_alpha);
  kv("bracket_width", r.bracket_width);
  kv("evaluations", static_cast<std::uint64_t>(r.evaluations));
  return kOk;
}

int cmd_los_solve(const rasec::ExperimentConfig& cfg) {
  const auto& s = cfg.scenario;
  const rasec::LosSolution sol = rasec::solve_near_optimal(s);
  kv("branch", rasec::to_string(sol.branch));
  kv("alpha_opt", sol.alpha_opt);
  kv("cs_los", sol.capacity);
  kv("alpha_max", rasec::alpha_max(s));
  if (sol.gamma0) {
    kv("gamma0", *sol.gamma0);
    kv("p0_dbm", gamma_to_dbm(*sol.gamma0, s.sigma2_dbm));
  }
  kv("clamped", std::string(sol.clamped ? "true" : "false"));
  if (!std::isnan(sol.raw_root)) kv("raw_root", sol.raw_root);
  return kOk;
}

int cmd_avg_capacity(const rasec::ExperimentConfig& cfg, double alpha, const std::string& method) {
  const auto& s = cfg.scenario;
  if (method == "mc") {
    const auto e = rasec::avg_cs_mc(s, alpha, cfg.estimator.mc_samples, cfg.estimator.seed);
    kv("method", std::string("mc"));
    kv("alpha", alpha);
    kv("avg_secrecy_capacity", e.value);
    kv("std_error", e.std_error);
    kv("samples", e.samples);
  } else {
    const auto e = rasec::avg_cs_quad(s, alpha, cfg.estimator.quad);
    kv("method", std::string("quad"));
    kv("alpha", alpha);
    kv("avg_secrecy_capacity", e.value);
    kv("rel_tol", e.tolerance);
  }
  return kOk;
}

int cmd_sop(const rasec::ExperimentConfig& cfg, double r_s, std::optional<double> alpha) {
  const auto& s = cfg.scenario;
  std::string source = "cli";
  if (!alpha && cfg.alpha) {
    alpha = cfg.alpha;
    source = "config";
  }
  if (!alpha) {
    alpha = rasec::solve_near_optimal(s).alpha_opt;
    source = "los";
  }
  const rasec::SopPoint p = rasec::sop_mc(s, *alpha, r_s, cfg.estimator.sop_samples, cfg.estimator.seed);
  kv("r_s", r_s);
  kv("alpha", *alpha);
  kv("alpha_source", source);
  if (!std::isnan(p.sop_theory)) kv("sop_theory", p.sop_theory);
  kv("sop_mc", p.sop_mc);
  kv("ci95_low", p.ci95_low);
  kv("ci95_high", p.ci95_high);
  kv("samples", p.samples);
  kv("outages", p.outages);
  return kOk;
}

int cmd_figure(const rasec::ExperimentConfig& cfg, const std::string& which, std::string path) {
  if (path.empty()) path = cfg.output_path;
  if (path.empty()) throw rasec::ValidationError("no output path: pass -o or set [output] path");
  rasec::CsvTable table;
  if (which == "fig2") table = rasec::run_fig2(cfg).table;
  else if (which == "fig3") table = rasec::run_fig3(cfg);
  else if (which == "fig4") table = rasec::run_fig4(cfg);
  else table = rasec::run_fig5(cfg);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw rasec::ValidationError("cannot open '" + path + "' for writing");
  rasec::write_csv(out, table);
  out.close();
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
  std::cerr << "wrote " << table.rows.size() << " rows to " << path << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rotatable-antenna secrecy analysis"};
  app.require_subcommand(1);

  Overrides ov;
  app.add_option("--seed", ov.seed, "Monte Carlo seed (overrides [estimator] seed)");
  app.add_option("--samples", ov.samples, "Monte Carlo sample count (overrides mc_samples and sop_samples)")
      ->check(CLI::PositiveNumber);
  app.add_option("--tol", ov.tol, "Quadrature absolute and relative tolerance")->check(CLI::PositiveNumber);

  std::string config_path;
  auto add_cmd = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    sub->add_option("config", config_path, "Configuration file")->required();
    return sub;
  };

  CLI::App* optimize = add_cmd("optimize", "Maximize the average secrecy capacity over alpha");
  CLI::App* los = add_cmd("los-solve", "Closed-form near-optimal alpha under the LoS approximation");
  CLI::App* avg = add_cmd("avg-capacity", "Average secrecy capacity at one alpha");
  double alpha_arg = 1.0;
  std::string method = "quad";
  avg->add_option("--alpha", alpha_arg, "Boresight parameter")->required();
  avg->add_option("--method", method, "Estimator")->check(CLI::IsMember({"mc", "quad"}));
  CLI::App* sop = add_cmd("sop", "Secrecy outage probability at one rate");
  double r_s = 0.0;
  std::optional<double> sop_alpha;
  sop->add_option("--rs", r_s, "Target secrecy rate in bps/Hz")->required();
  sop->add_option("--alpha", sop_alpha, "Boresight parameter (default: config alpha, else LoS solution)");
  CLI::App* figure = add_cmd("figure", "Regenerate a figure as CSV");
  std::string which, out_path;
  figure->add_option("name", which, "fig2, fig3, fig4 or fig5")
      ->required()
      ->check(CLI::IsMember({"fig2", "fig3", "fig4", "fig5"}));
  // Positional order is <name> <config>: re-add config after name.
  figure->remove_option(figure->get_option("config"));
  figure->add_option("config", config_path, "Configuration file")->required();
  figure->add_option("-o,--output", out_path, "Output CSV path");
  CLI::App* validate = add_cmd("validate", "Parse and validate a config, print the resolved form");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    const rasec::ExperimentConfig cfg = load(config_path, ov);
    if (*validate) return cmd_validate(cfg);
    if (*optimize) return cmd_optimize(cfg);
    if (*los) return cmd_los_solve(cfg);
    if (*avg) return cmd_avg_capacity(cfg, alpha_arg, method);
    if (*sop) return cmd_sop(cfg, r_s, sop_alpha);
    if (*figure) return cmd_figure(cfg, which, out_path);
  } catch (const rasec::NonConvergent& e) {
    std::cerr << "error: numeric non-convergence: " << e.what() << "\n";
    return kNonConvergent;
  } catch (const rasec::ParseError& e) {
    std::cerr << "config error: " << config_path << ": " << e.what() << "\n";
    return kConfig;
  } catch (const rasec::Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
