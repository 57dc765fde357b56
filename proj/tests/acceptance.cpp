// Acceptance run: one PASS/FAIL line per criterion, followed by indented detail.
// Exit status is nonzero if any criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <tuple>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rasec/rasec.hpp"

using namespace rasec;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    notes.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
  void note(const std::string& what) { notes.push_back("     " + what); }
};

std::string fmt(double v) { return format_value(v); }

int failures = 0;

void report(const char* id, const char* title, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.notes.push_back(std::string("FAIL exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("%s %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, title, secs);
  for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
  std::fflush(stdout);
}

bool quasi_concave(const std::vector<double>& v, double plateau) {
  bool descending = false;
  for (std::size_t i = 1; i < v.size(); ++i) {
    const double d = v[i] - v[i - 1];
    if (std::abs(d) <= plateau) continue;
    if (d < 0.0) descending = true;
    else if (descending) return false;
  }
  return true;
}

// Wilson interval recovered from a table row (outage count = sop_mc * n exactly).
WilsonInterval row_interval(double sop_mc, std::uint64_t n) {
  return wilson95(static_cast<std::uint64_t>(std::llround(sop_mc * static_cast<double>(n))), n);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome ac1() {
  Outcome o;
  const double am = alpha_max(parse_config("").scenario);
  o.check(std::abs(am - 2.62) <= 0.01, "alpha_max = " + fmt(am) + ", target 2.62 +- 0.01");
  return o;
}

Outcome ac2() {
  Outcome o;
  const Fig2Result r = run_fig2(parse_config(""));
  std::vector<double> quad;
  const std::size_t col = r.table.column("avg_cs_quad");
  for (const auto& row : r.table.rows) quad.push_back(row[col]);
  o.check(quad.size() == 64, std::to_string(quad.size()) + " grid points on [1, alpha_max]");
  o.check(quasi_concave(quad, 1e-9), "quadrature curve unimodal (no rise after a fall beyond 1e-9)");
  o.check(r.gap <= 0.01, "numeric optimum alpha = " + fmt(r.alpha_numeric) + ", E = " + fmt(r.ecs_numeric) +
                             "; LoS alpha = " + fmt(r.alpha_los) + ", E = " + fmt(r.ecs_at_los) + "; gap " +
                             fmt(r.gap) + " <= 0.01");
  return o;
}

Outcome ac3() {
  Outcome o;
  const ExperimentConfig cfg = parse_config("");
  const CsvTable t = run_fig4(cfg);
  const std::uint64_t n = cfg.estimator.sop_samples;
  int checked = 0, inside = 0;
  for (const auto& row : t.rows) {
    const double rs = row[0];
    if (rs < 0.5 - 1e-12) continue;
    const double theory = row[t.column("sop_theory")];
    const double mc = row[t.column("sop_mc")];
    const WilsonInterval ci = row_interval(mc, n);
    ++checked;
    if (ci.contains(theory)) {
      ++inside;
    } else {
      o.check(false, "upsilon " + fmt(row[1]) + ", r_s " + fmt(rs) + ": theory " + fmt(theory) + " outside [" +
                         fmt(ci.low) + ", " + fmt(ci.high) + "]");
    }
  }
  o.check(checked == 18 && inside == checked, std::to_string(inside) + "/" + std::to_string(checked) +
                                                  " points with theory inside the 95% interval at n = " +
                                                  std::to_string(n));
  return o;
}

Outcome ac4() {
  Outcome o;
  const ExperimentConfig cfg = parse_config("");
  const CsvTable t = run_fig5(cfg);
  const std::uint64_t n = cfg.estimator.sop_samples;
  std::map<double, std::pair<int, int>> match;  // upsilon -> (inside, required)
  std::map<double, std::pair<int, int>> bound;
  for (const auto& row : t.rows) {
    const double p = row[0], up = row[1];
    const double theory = row[t.column("sop_theory")];
    const double mc = row[t.column("sop_mc")];
    const WilsonInterval ci = row_interval(mc, n);
    const double threshold = up == 0.0 ? -1e9 : (up == 30.0 ? 21.0 : 24.0);
    if (p >= threshold) {
      ++match[up].second;
      if (ci.contains(theory)) ++match[up].first;
      else o.check(false, "upsilon " + fmt(up) + ", P " + fmt(p) + ": theory " + fmt(theory) + " outside [" +
                              fmt(ci.low) + ", " + fmt(ci.high) + "]");
    } else {
      ++bound[up].second;
      if (theory >= ci.low) ++bound[up].first;
      else o.check(false, "upsilon " + fmt(up) + ", P " + fmt(p) + ": theory " + fmt(theory) +
                              " below the interval low end " + fmt(ci.low));
    }
  }
  for (double up : kSopUpsilons) {
    const auto [in, req] = match[up];
    o.check(req > 0 && in == req, "upsilon " + fmt(up) + ": theory inside the interval at " + std::to_string(in) +
                                      "/" + std::to_string(req) + " powers at or above the threshold");
    if (bound[up].second > 0) {
      const auto [ok, tot] = bound[up];
      o.check(ok == tot, "upsilon " + fmt(up) + ": theory >= interval low end at " + std::to_string(ok) + "/" +
                             std::to_string(tot) + " powers below the threshold");
    }
  }
  return o;
}

Outcome ac5() {
  Outcome o;
  // (a) Monte Carlo against quadrature
  {
    oracle::ScenarioFuzzer fuzz(501);
    int ok = 0;
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const Scenario s = fuzz.next();
      const double a = fuzz.uniform(1.0, alpha_max(s));
      const auto mc = avg_cs_mc(s, a, 1'000'000, 20251018, i);
      const double q = avg_cs_quad(s, a).value;
      const double z = std::abs(mc.value - q) / mc.std_error;
      worst = std::max(worst, z);
      ok += z <= 3.0;
    }
    o.check(ok == 10, "(a) MC vs quadrature within 3 SE on " + std::to_string(ok) + "/10 instances, worst " +
                          fmt(worst) + " SE");
  }
  // (b) LoS closed form against a dense grid
  {
    oracle::ScenarioFuzzer fuzz(502);
    int ok = 0;
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const Scenario s = fuzz.next(-10.0, 40.0);
      const LosSolution sol = solve_near_optimal(s);
      const double am = alpha_max(s);
      double grid = 0.0;
      for (int k = 0; k < 10'000; ++k) grid = std::max(grid, oracle::cs_los_alpha(s, 1.0 + (am - 1.0) * k / 9999.0));
      const double margin = oracle::cs_los_alpha(s, sol.alpha_opt) - grid;
      worst = std::min(worst, margin);
      ok += margin >= -1e-8;
    }
    o.check(ok == 200, "(b) LoS optimum >= 1e4-point grid max - 1e-8 on " + std::to_string(ok) +
                           "/200 scenarios, worst margin " + fmt(worst));
  }
  // (c) special functions against integral definitions
  {
    double worst_i = 0.0, worst_q = 0.0;
    for (double x : {0.01, 0.5, 1.0, 3.0, 8.0, 14.9, 15.1, 30.0, 100.0, 700.0}) {
      worst_i = std::max(worst_i, std::abs(bessel_i0_scaled(x) / oracle::bessel_i_integral_scaled(0, x) - 1.0));
      worst_i = std::max(worst_i, std::abs(bessel_i1_scaled(x) / oracle::bessel_i_integral_scaled(1, x) - 1.0));
    }
    for (double a : {0.1, 1.0, 1.4142135623730951, 2.0, 4.0, 8.0})
      for (double b : {0.1, 0.5, 1.0, 2.0, 4.0, 8.0}) {
        const double want = oracle::marcum_q1_integral(a, b);
        worst_q = std::max(worst_q, std::abs(marcum_q1(a, b) / want - 1.0));
      }
    o.check(worst_i <= 1e-10, "(c) Bessel I0/I1 worst relative error " + fmt(worst_i));
    o.check(worst_q <= 1e-10, "(c) Marcum Q1 worst relative error " + fmt(worst_q));
  }
  // (d) coefficient identities
  {
    oracle::ScenarioFuzzer fuzz(504);
    double worst = 0.0;
    for (int i = 0; i < 10'000; ++i)
      for (double r : identity_residuals(compute_coefficients(fuzz.next(-30.0, 60.0)))) worst = std::max(worst, r);
    o.check(worst <= 1e-9, "(d) precursor identities on 10000 scenarios, worst relative residual " + fmt(worst));
  }
  // (e) Psi monotone and objective unimodal on the test scenarios
  {
    oracle::ScenarioFuzzer fuzz(505);
    int psi_ok = 0, uni_ok = 0;
    for (int i = 0; i < 11; ++i) {
      Scenario s;
      if (i == 0) s.p_dbm = 16.0;
      else s = fuzz.next();
      const double am = alpha_max(s);
      bool mono = true;
      double prev = 0.0;
      for (int k = 0; k < 1000; ++k) {
        const double p = psi(s, 1.0 + (am - 1.0) * k / 1000.0);
        mono = mono && p >= prev * (1.0 - 1e-12);
        prev = p;
      }
      std::vector<double> curve;
      for (int k = 0; k < 64; ++k) curve.push_back(avg_cs_quad(s, 1.0 + (am - 1.0) * k / 63.0).value);
      psi_ok += mono;
      uni_ok += quasi_concave(curve, 1e-9);
    }
    o.check(psi_ok == 11, "(e) Psi nondecreasing on " + std::to_string(psi_ok) + "/11 scenarios");
    o.check(uni_ok == 11, "(e) E[C_s] unimodal on 64-point grids on " + std::to_string(uni_ok) + "/11 scenarios");
  }
  return o;
}

Outcome ac6() {
  Outcome o;
  const CsvTable t = run_fig3(parse_config(""));
  // Comparisons allow the quadrature's absolute tolerance.
  const double tol = 1e-8;
  std::map<std::tuple<double, double, double>, std::pair<double, double>> v;  // (K, upsilon, P) -> (opt, near)
  for (const auto& row : t.rows) v[{row[1], row[2], row[0]}] = {row[3], row[4]};
  int mono_bad = 0, ups_bad = 0, k_bad = 0, gap_bad = 0;
  double worst_gap = 0.0;
  for (const auto& [key, val] : v) {
    const auto [K, up, p] = key;
    const double opt = val.first, near = val.second;
    if (auto it = v.find({K, up, p + 2.0}); it != v.end() && it->second.first < opt - tol) ++mono_bad;
    if (up == 0.0 && opt < v.at({K, 30.0, p}).first - tol) ++ups_bad;
    if (K == 5.0 && opt < v.at({1.0, up, p}).first - tol) ++k_bad;
    worst_gap = std::max(worst_gap, std::abs(opt - near));
    gap_bad += std::abs(opt - near) > 0.02;
  }
  o.check(mono_bad == 0, "optimal E[C_s] nondecreasing in P on every curve (" + std::to_string(mono_bad) + " violations)");
  o.check(ups_bad == 0, "upsilon 0 >= upsilon 30 at every (K, P) (" + std::to_string(ups_bad) + " violations)");
  o.check(k_bad == 0, "K 5 >= K 1 at every (upsilon, P) (" + std::to_string(k_bad) + " violations)");
  o.check(gap_bad == 0, "optimal vs near-optimal gap <= 0.02 everywhere, worst " + fmt(worst_gap));
  return o;
}

Outcome ac7() {
  Outcome o;
  std::ofstream("acceptance_fig2.cfg") << "# reference setup\n";
  auto run = [](const std::string& out) {
    const std::string cmd = std::string(RASEC_CLI) + " --seed 20251018 figure fig2 acceptance_fig2.cfg -o " + out;
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  const int c1 = run("acceptance_fig2_a.csv");
  const int c2 = run("acceptance_fig2_b.csv");
  o.check(c1 == 0 && c2 == 0, "both CLI runs exit 0");
  const std::string a = slurp("acceptance_fig2_a.csv"), b = slurp("acceptance_fig2_b.csv");
  o.check(!a.empty() && a == b, "outputs byte-identical (" + std::to_string(a.size()) + " bytes)");
  return o;
}

}  // namespace

int main() {
  report("AC1", "alpha_max of the reference setup", ac1);
  report("AC2", "average secrecy capacity versus alpha at 16 dBm", ac2);
  report("AC3", "outage theory versus simulation over r_s at 25 dBm", ac3);
  report("AC4", "outage theory versus simulation over P, regime thresholds", ac4);
  report("AC5", "oracle equivalence suite", ac5);
  report("AC6", "average secrecy capacity versus P, shape properties", ac6);
  report("AC7", "figure CSV determinism through the CLI", ac7);
  std::printf("%s: %d criterion(s) failed\n", failures ? "FAILED" : "ALL PASSED", failures);
  return failures ? 1 : 0;
}
