#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "rasec/avg_secrecy.hpp"
#include "rasec/config.hpp"
#include "rasec/csv.hpp"
#include "rasec/los_solver.hpp"
#include "rasec/outage.hpp"
#include "rasec/parallel.hpp"

// Drivers that regenerate the four reference figures as CSV tables. Each one
// uses the configured scenario as a base and overrides only what the figure
// varies (transmit power, eavesdropper elevation, Rician factor).

namespace rasec {

inline constexpr int kFig2GridPoints = 64;
inline constexpr double kFig2DefaultPower = 16.0;
inline constexpr double kFig4DefaultPower = 25.0;

/// Same eavesdropper distance, new elevation angle in degrees.
inline Scenario with_eavesdropper_elevation(Scenario s, double upsilon_deg) {
  s.q_e = xz_position(norm(s.q_e), upsilon_deg);
  return s;
}

namespace detail {

inline Sweep figure_grid(const ExperimentConfig& cfg, SweepVariable native, Sweep fallback, const char* fig) {
  if (!cfg.sweep) return fallback;
  if (cfg.sweep->variable != native)
    throw ValidationError(std::string(fig) + " sweeps " + to_string(native) + ", config sweeps " +
                          to_string(cfg.sweep->variable));
  return *cfg.sweep;
}

// Records the configuration with every figure-level default made explicit.
inline void describe(CsvTable& t, const char* fig, ExperimentConfig resolved, const Sweep& grid,
                     std::optional<double> fixed_power) {
  if (fixed_power) {
    resolved.scenario.p_dbm = *fixed_power;
    resolved.p_dbm_set = true;
  }
  resolved.sweep = grid;
  t.add_comment(std::string("figure = ") + fig);
  t.add_comment("seed = " + std::to_string(resolved.estimator.seed));
  t.add_comment(to_text(resolved));
}

}  // namespace detail

struct Fig2Result {
  CsvTable table;
  double alpha_numeric = 1.0;
  double ecs_numeric = 0.0;
  double alpha_los = 1.0;
  double ecs_at_los = 0.0;
  double gap = 0.0;
  LosBranch los_branch = LosBranch::CollinearUserFirst;
};

inline Fig2Result run_fig2(const ExperimentConfig& cfg) {
  Scenario s = cfg.scenario;
  if (!cfg.p_dbm_set) s.p_dbm = kFig2DefaultPower;
  const double hi = alpha_upper(s);
  Sweep fallback{SweepVariable::alpha, 1.0, hi, (hi - 1.0) / (kFig2GridPoints - 1)};
  std::vector<double> alphas;
  if (cfg.sweep) {
    alphas = detail::figure_grid(cfg, SweepVariable::alpha, fallback, "fig2").grid();
  } else if (hi == 1.0) {
    alphas = {1.0};
  } else {
    for (int i = 0; i < kFig2GridPoints; ++i)
      alphas.push_back(i + 1 == kFig2GridPoints ? hi : 1.0 + (hi - 1.0) * i / (kFig2GridPoints - 1));
  }

  const auto& est = cfg.estimator;
  const auto rows = parallel_map<std::vector<double>>(alphas.size(), [&](std::size_t i) {
    const double a = alphas[i];
    return std::vector<double>{a, avg_cs_mc(s, a, est.mc_samples, est.seed, 0).value,
                               avg_cs_quad(s, a, est.quad).value, cs_los(s, a)};
  });

  Fig2Result r;
  const OptResult opt = optimize_alpha(s, est.tol_alpha, est.quad);
  const LosSolution los = solve_near_optimal(s);
  r.alpha_numeric = opt.alpha_opt;
  r.ecs_numeric = opt.value.value;
  r.alpha_los = los.alpha_opt;
  r.los_branch = los.branch;
  r.ecs_at_los = avg_cs_quad(s, los.alpha_opt, est.quad).value;
  r.gap = std::abs(r.ecs_numeric - r.ecs_at_los);

  r.table.columns = {"alpha", "avg_cs_mc", "avg_cs_quad", "cs_los"};
  detail::describe(r.table, "fig2", cfg, cfg.sweep.value_or(fallback), s.p_dbm);
  r.table.add_comment("alpha_opt_numeric = " + format_value(r.alpha_numeric));
  r.table.add_comment("ecs_opt_numeric = " + format_value(r.ecs_numeric));
  r.table.add_comment("alpha_opt_los = " + format_value(r.alpha_los) + " (" + to_string(los.branch) + ")");
  r.table.add_comment("ecs_at_alpha_opt_los = " + format_value(r.ecs_at_los));
  r.table.add_comment("optimum_gap = " + format_value(r.gap));
  for (const auto& row : rows) r.table.add_row(row);
  return r;
}

inline CsvTable run_fig3(const ExperimentConfig& cfg) {
  const Sweep grid = detail::figure_grid(cfg, SweepVariable::p_dbm, {SweepVariable::p_dbm, 0.0, 30.0, 2.0}, "fig3");
  const std::vector<double> powers = grid.grid();
  struct Point { double K, upsilon, p; };
  std::vector<Point> points;
  for (double K : {1.0, 5.0})
    for (double up : {0.0, 30.0})
      for (double p : powers) points.push_back({K, up, p});

  const auto& est = cfg.estimator;
  const auto rows = parallel_map<std::vector<double>>(points.size(), [&](std::size_t i) {
    const Point& pt = points[i];
    Scenario s = with_eavesdropper_elevation(cfg.scenario, pt.upsilon);
    s.K_b = s.K_e = pt.K;
    s.p_dbm = pt.p;
    const double optimal = optimize_alpha(s, est.tol_alpha, est.quad).value.value;
    const double near = avg_cs_quad(s, solve_near_optimal(s).alpha_opt, est.quad).value;
    return std::vector<double>{pt.p, pt.K, pt.upsilon, optimal, near};
  });

  CsvTable t;
  t.columns = {"p_dbm", "K", "upsilon", "ecs_optimal", "ecs_near_optimal"};
  detail::describe(t, "fig3", cfg, grid, std::nullopt);
  for (const auto& row : rows) t.add_row(row);
  return t;
}

inline constexpr double kSopUpsilons[] = {0.0, 30.0, 45.0};

namespace detail {

inline std::vector<double> sop_row(double sweep_value, double upsilon, const SopPoint& p) {
  return {sweep_value, upsilon, p.sop_theory, p.sop_mc, p.ci95_halfwidth};
}

}  // namespace detail

/// SOP versus r_s. Each elevation is one curve and uses one generator stream, so
/// its points share channel draws.
inline CsvTable run_fig4(const ExperimentConfig& cfg) {
  const Sweep grid = detail::figure_grid(cfg, SweepVariable::r_s, {SweepVariable::r_s, 0.0, 3.0, 0.5}, "fig4");
  const std::vector<double> rates = grid.grid();
  const double power = cfg.p_dbm_set ? cfg.scenario.p_dbm : kFig4DefaultPower;

  CsvTable t;
  t.columns = {"r_s", "upsilon", "sop_theory", "sop_mc", "ci95"};
  detail::describe(t, "fig4", cfg, grid, power);

  std::vector<Scenario> curves;
  std::vector<double> curve_alpha;
  for (double up : kSopUpsilons) {
    Scenario s = with_eavesdropper_elevation(cfg.scenario, up);
    s.p_dbm = power;
    const LosSolution los = solve_near_optimal(s);
    curves.push_back(s);
    curve_alpha.push_back(los.alpha_opt);
    t.add_comment("upsilon = " + format_value(up) + ": alpha = " + format_value(los.alpha_opt) + " (" +
                  to_string(los.branch) + ")");
  }

  const std::size_t n = rates.size();
  const auto& est = cfg.estimator;
  const auto rows = parallel_map<std::vector<double>>(curves.size() * n, [&](std::size_t i) {
    const std::size_t c = i / n;
    const double rs = rates[i % n];
    const SopPoint p = sop_mc(curves[c], curve_alpha[c], rs, est.sop_samples, est.seed, c);
    return detail::sop_row(rs, kSopUpsilons[c], p);
  });
  for (const auto& row : rows) t.add_row(row);
  return t;
}

/// SOP versus transmit power at the configured secrecy rate (default 1 bps/Hz).
inline CsvTable run_fig5(const ExperimentConfig& cfg) {
  const Sweep grid = detail::figure_grid(cfg, SweepVariable::p_dbm, {SweepVariable::p_dbm, 14.0, 30.0, 1.0}, "fig5");
  const std::vector<double> powers = grid.grid();

  CsvTable t;
  t.columns = {"p_dbm", "upsilon", "sop_theory", "sop_mc", "ci95"};
  detail::describe(t, "fig5", cfg, grid, std::nullopt);

  const std::size_t n = powers.size();
  const auto& est = cfg.estimator;
  const auto rows = parallel_map<std::vector<double>>(std::size(kSopUpsilons) * n, [&](std::size_t i) {
    const std::size_t c = i / n;
    Scenario s = with_eavesdropper_elevation(cfg.scenario, kSopUpsilons[c]);
    s.p_dbm = powers[i % n];
    const double alpha = solve_near_optimal(s).alpha_opt;
    const SopPoint p = sop_mc(s, alpha, cfg.r_s, est.sop_samples, est.seed, c);
    return detail::sop_row(s.p_dbm, kSopUpsilons[c], p);
  });
  for (const auto& row : rows) t.add_row(row);
  return t;
}

}  // namespace rasec
