#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "rasec/bessel.hpp"
#include "rasec/errors.hpp"
#include "rasec/geometry.hpp"
#include "rasec/marcum.hpp"
#include "rasec/random.hpp"

namespace rasec {

struct FadingParams {
  double L = 0.0;          // large-scale power gain
  double K = 0.0;          // Rician factor
  double eta = 0.0;        // (1 + K) / (L G_0)
  double los_phase = 0.0;  // -2 pi |q| / lambda
};

/// zeta_0 |q_i|^{-beta_i}.
inline double large_scale(const Scenario& s, LinkEnd end) {
  return s.zeta_0 * std::pow(norm(s.position(end)), -s.beta(end));
}

inline FadingParams fading_params(const Scenario& s, LinkEnd end) {
  FadingParams p;
  p.L = large_scale(s, end);
  p.K = s.rician_k(end);
  p.eta = (1.0 + p.K) / (p.L * s.G_0);
  p.los_phase = -2.0 * std::numbers::pi * norm(s.position(end)) / s.lambda;
  return p;
}

/// Mean channel power L_i G_0 max(0, Phi_i^{-1}(alpha)) on the boresight line.
inline double mean_channel_power(const Scenario& s, double alpha, LinkEnd end) {
  const double c = phi_inv(s, alpha, end);
  return c > 0.0 ? large_scale(s, end) * s.G_0 * c : 0.0;
}

/// Draws |h|^2 = m |sqrt(K/(K+1)) e^{j phase} + sqrt(1/(K+1)) z|^2 with z ~ CN(0, 1),
/// z built from two independent real normals of variance 1/2.
class RicianPowerSampler {
public:
  RicianPowerSampler(double mean_power, double K, double los_phase)
      : mean_(mean_power),
        los_re_(std::sqrt(K / (K + 1.0)) * std::cos(los_phase)),
        los_im_(std::sqrt(K / (K + 1.0)) * std::sin(los_phase)),
        sigma_(std::sqrt(0.5 / (K + 1.0))) {}

  template <class Gen>
  double operator()(Gen& gen) {
    const double re = los_re_ + sigma_ * normal_(gen);
    const double im = los_im_ + sigma_ * normal_(gen);
    return mean_ * (re * re + im * im);
  }

  double mean() const { return mean_; }

private:
  double mean_;
  double los_re_;
  double los_im_;
  double sigma_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

inline RicianPowerSampler link_sampler(const Scenario& s, double alpha, LinkEnd end) {
  return RicianPowerSampler(mean_channel_power(s, alpha, end), s.rician_k(end), fading_params(s, end).los_phase);
}

inline double sample_channel_power(Rng& rng, const Scenario& s, double alpha, LinkEnd end) {
  auto sampler = link_sampler(s, alpha, end);
  return sampler(rng);
}

/// Density of a Rician power with the given mean and K (noncentral chi-square, 2 dof):
/// r e^{-K} e^{-r x} I0(2 sqrt(K r x)), r = (1 + K) / mean. Evaluated through the
/// scaled Bessel function, i.e. in log space once the Bessel argument is large.
inline double rician_power_pdf(double x, double mean, double K) {
  if (x < 0.0) return 0.0;
  const double r = (1.0 + K) / mean;
  const double arg = 2.0 * std::sqrt(K * r * x);
  if (arg <= 30.0) return r * std::exp(-K - r * x) * bessel_i0(arg);
  return r * std::exp(-K - r * x + arg) * bessel_i0_scaled(arg);
}

/// Pr(|h|^2 <= x) = 1 - Q1(sqrt(2K), sqrt(2 (1 + K) x / mean)).
inline double rician_power_cdf(double x, double mean, double K) {
  if (x <= 0.0) return 0.0;
  return 1.0 - marcum_q1(std::sqrt(2.0 * K), std::sqrt(2.0 * (1.0 + K) * x / mean));
}

inline double pdf_channel_power(double x, const Scenario& s, double alpha, LinkEnd end) {
  const double c = phi_inv(s, alpha, end);
  if (!(c > 0.0)) throw DegenerateDensity("channel power is a point mass at 0 (boresight gain is zero)");
  return rician_power_pdf(x, large_scale(s, end) * s.G_0 * c, s.rician_k(end));
}

/// [log2(1 + gamma pb) - log2(1 + gamma pe)]^+ in bps/Hz.
inline double instant_secrecy_capacity(double pb, double pe, double gamma) {
  const double d = (std::log1p(gamma * pb) - std::log1p(gamma * pe)) / std::numbers::ln2;
  return d > 0.0 ? d : 0.0;
}

}  // namespace rasec
