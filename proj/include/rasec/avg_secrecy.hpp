#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "rasec/bessel.hpp"
#include "rasec/channel.hpp"
#include "rasec/geometry.hpp"
#include "rasec/golden_section.hpp"
#include "rasec/quadrature.hpp"
#include "rasec/random.hpp"

namespace rasec {

enum class EstimateMethod { monte_carlo, quadrature };

inline const char* to_string(EstimateMethod m) {
  return m == EstimateMethod::monte_carlo ? "mc" : "quad";
}

struct CapacityEstimate {
  double value = 0.0;      // bps/Hz
  EstimateMethod method = EstimateMethod::quadrature;
  double std_error = 0.0;  // Monte Carlo only
  std::uint64_t samples = 0;
  double tolerance = 0.0;  // quadrature only (relative)
};

/// Monte Carlo E[C_s(alpha)] from n joint draws of (|h_b|^2, |h_e|^2).
inline CapacityEstimate avg_cs_mc(const Scenario& s, double alpha, std::uint64_t n, std::uint64_t seed,
                                  std::uint64_t stream = 0) {
  if (n < 1) throw ValidationError("avg_cs_mc needs at least one sample");
  Rng rng = make_stream(seed, stream);
  auto user = link_sampler(s, alpha, LinkEnd::user);
  auto eve = link_sampler(s, alpha, LinkEnd::eavesdropper);
  const double gamma = snr_linear(s);
  double mean = 0.0, m2 = 0.0;
  for (std::uint64_t i = 1; i <= n; ++i) {
    const double pb = user(rng);
    const double pe = eve(rng);
    const double c = instant_secrecy_capacity(pb, pe, gamma);
    const double delta = c - mean;
    mean += delta / static_cast<double>(i);
    m2 += delta * (c - mean);
  }
  CapacityEstimate e;
  e.value = mean;
  e.method = EstimateMethod::monte_carlo;
  e.samples = n;
  e.std_error = n > 1 ? std::sqrt(m2 / static_cast<double>(n - 1) / static_cast<double>(n)) : 0.0;
  return e;
}

namespace detail {

/// Standardized Rician power density e^{-K} e^{-t} I0(2 sqrt(K t)) (the law of
/// (1 + K) |h|^2 / E|h|^2), written as exp(-(sqrt t - sqrt K)^2) e^{-z} I0(z).
inline double standard_rician_density(double t, double K) {
  if (t < 0.0) return 0.0;
  const double rt = std::sqrt(t);
  const double rk = std::sqrt(K);
  const double d = rt - rk;
  return std::exp(-d * d) * bessel_i0_scaled(2.0 * rk * rt);
}

}  // namespace detail

/// E[(log2(1 + gamma X) - log2(1 + gamma Y))^+] for independent Rician powers
/// X (mean mean_b, factor K_b) and Y (mean mean_e, factor K_e) by nested quadrature:
/// the outer integral runs over x in [0, inf), the inner one over y in [0, x].
/// A zero mean collapses that law to a point mass at 0.
inline double avg_secrecy_nested_integral(double mean_b, double K_b, double mean_e, double K_e, double gamma,
                                          const QuadratureSpec& spec) {
  if (!(mean_b > 0.0)) return 0.0;
  const double rate_b = (1.0 + K_b) / mean_b;  // x = t / rate_b
  const double inv_ln2 = 1.0 / std::numbers::ln2;

  if (!(mean_e > 0.0)) {
    auto outer = [&](double t) {
      return detail::standard_rician_density(t, K_b) * std::log1p(gamma * t / rate_b) * inv_ln2;
    };
    return integrate_semi_infinite(outer, spec, 0.0, 1.0 + K_b).value;
  }

  const double rate_e = (1.0 + K_e) / mean_e;  // y = u / rate_e
  QuadratureSpec inner_spec = spec;
  inner_spec.abs_tol = spec.abs_tol * 0.1;
  // The standardized density is below exp(-(sqrt u - sqrt K)^2), which underflows
  // past u_cut. Cutting there keeps a weak eavesdropper's narrow bump from being
  // stepped over by the first Kronrod pass on a very long interval.
  const double rk = std::sqrt(K_e);
  const double u_cut = (rk + 38.0) * (rk + 38.0);
  const double bumps[] = {K_e, (rk + 1) * (rk + 1), (rk + 2) * (rk + 2), (rk + 4) * (rk + 4),
                          (rk + 8) * (rk + 8), (rk + 16) * (rk + 16)};
  auto inner = [&](double x) {
    const double upper = std::min(rate_e * x, u_cut);
    if (upper <= 0.0) return 0.0;
    const double log_b = std::log1p(gamma * x);
    auto integrand = [&](double u) {
      return (log_b - std::log1p(gamma * u / rate_e)) * detail::standard_rician_density(u, K_e);
    };
    return integrate(integrand, 0.0, upper, inner_spec, bumps).value * inv_ln2;
  };
  auto outer = [&](double t) {
    const double w = detail::standard_rician_density(t, K_b);
    return w == 0.0 ? 0.0 : w * inner(t / rate_b);
  };
  // The inner integral switches on over x ~ bumps / rate_e; for a weak eavesdropper
  // that step is far narrower than the user's bulk, so the outer grid marks it too.
  std::vector<double> steps;
  for (double u : bumps) steps.push_back(u * rate_b / rate_e);
  return integrate_semi_infinite(outer, spec, 0.0, 1.0 + K_b, steps).value;
}

/// Deterministic E[C_s(alpha)] from the nested integral over the two channel-power densities.
inline CapacityEstimate avg_cs_quad(const Scenario& s, double alpha, const QuadratureSpec& spec = {}) {
  const double mean_b = mean_channel_power(s, alpha, LinkEnd::user);
  const double mean_e = mean_channel_power(s, alpha, LinkEnd::eavesdropper);
  CapacityEstimate e;
  e.method = EstimateMethod::quadrature;
  e.tolerance = spec.rel_tol;
  e.value = std::max(0.0, avg_secrecy_nested_integral(mean_b, s.K_b, mean_e, s.K_e, snr_linear(s), spec));
  return e;
}

struct OptResult {
  double alpha_opt = 1.0;
  CapacityEstimate value;
  int iterations = 0;
  int evaluations = 0;
  double bracket_width = 0.0;
};

inline constexpr double kDefaultTolAlpha = 1e-4;

/// Maximizes the quadrature objective over alpha in [1, alpha_max] by golden-section
/// search; the objective is quasi-concave there, so a single bracket suffices.
inline OptResult optimize_alpha(const Scenario& s, double tol_alpha = kDefaultTolAlpha,
                                const QuadratureSpec& spec = {}) {
  if (!(tol_alpha > 0.0)) throw ValidationError("tol_alpha must be > 0");
  const double hi = alpha_upper(s);
  OptResult r;
  // Collinear geometry: every alpha below alpha_max gives the same two gains.
  if (collinear(s) || hi == 1.0) {
    r.alpha_opt = 1.0;
    r.value = avg_cs_quad(s, 1.0, spec);
    r.evaluations = 1;
    return r;
  }
  auto objective = [&](double a) { return avg_cs_quad(s, a, spec).value; };
  const LineSearchResult ls = maximize_unimodal(objective, 1.0, hi, tol_alpha);
  r.alpha_opt = ls.x;
  r.value = avg_cs_quad(s, ls.x, spec);
  r.iterations = ls.iterations;
  r.evaluations = ls.evaluations + 1;
  r.bracket_width = ls.bracket_width;
  return r;
}

}  // namespace rasec
