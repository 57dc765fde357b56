#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

#include "rasec/channel.hpp"
#include "rasec/errors.hpp"
#include "rasec/geometry.hpp"
#include "rasec/random.hpp"

namespace rasec {

/// Channel-power threshold (2^{r_s} - 1) / gamma below which the user link is in outage.
inline double gamma_th(double r_s, double gamma) {
  if (!(r_s >= 0.0)) throw ValidationError("secrecy rate must be >= 0");
  if (!(gamma > 0.0)) throw ValidationError("SNR must be > 0");
  return std::expm1(r_s * std::numbers::ln2) / gamma;
}

/// High-SNR secrecy outage probability with the boresight orthogonal to the
/// eavesdropper: the user power is Rician with mean L_b G_0 sin(BAE), so
/// SOP = 1 - Q1(sqrt(2 K_b), sqrt(2 (1 + K_b) gamma_th / (L_b G_0 sin BAE))).
/// Does not depend on alpha.
inline double sop_theory(const Scenario& s, double r_s) {
  const double sb = sin_bae(s);
  if (!(sb > kCollinearSinTol)) throw CollinearGeometry("sop_theory needs sin(BAE) > 0");
  if (std::isinf(r_s) && r_s > 0.0) return 1.0;
  const double th = gamma_th(r_s, snr_linear(s));
  const double mean = large_scale(s, LinkEnd::user) * s.G_0 * sb;
  return rician_power_cdf(th, mean, s.K_b);
}

struct SopPoint {
  double r_s = 0.0;
  double p_dbm = 0.0;
  double alpha = 1.0;
  double sop_theory = std::numeric_limits<double>::quiet_NaN();
  double sop_mc = 0.0;
  double ci95_halfwidth = 0.0;
  double ci95_low = 0.0;
  double ci95_high = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t outages = 0;
};

struct WilsonInterval {
  double low = 0.0;
  double high = 0.0;
  double halfwidth() const { return 0.5 * (high - low); }
  bool contains(double p) const { return p >= low && p <= high; }
};

/// 95% Wilson score interval for k successes out of n.
inline WilsonInterval wilson95(std::uint64_t k, std::uint64_t n) {
  constexpr double z = 1.959963984540054;
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(k) / nn;
  const double z2n = z * z / nn;
  const double center = (p + 0.5 * z2n) / (1.0 + z2n);
  const double half = z / (1.0 + z2n) * std::sqrt(p * (1.0 - p) / nn + z * z / (4.0 * nn * nn));
  // The exact bounds at k = 0 and k = n are 0 and 1; the closed form misses them by rounding.
  return {k == 0 ? 0.0 : std::max(0.0, center - half), k == n ? 1.0 : std::min(1.0, center + half)};
}

/// Monte Carlo Pr(C_s < r_s) with both links fading at boresight `alpha`.
/// C_s equal to r_s is not an outage, so r_s = 0 gives exactly 0.
inline SopPoint sop_mc(const Scenario& s, double alpha, double r_s, std::uint64_t n, std::uint64_t seed,
                       std::uint64_t stream = 0) {
  if (n < 1) throw ValidationError("sop_mc needs at least one sample");
  if (!(r_s >= 0.0)) throw ValidationError("secrecy rate must be >= 0");
  Rng rng = make_stream(seed, stream);
  auto user = link_sampler(s, alpha, LinkEnd::user);
  auto eve = link_sampler(s, alpha, LinkEnd::eavesdropper);
  const double gamma = snr_linear(s);
  std::uint64_t outages = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    const double pb = user(rng);
    const double pe = eve(rng);
    if (instant_secrecy_capacity(pb, pe, gamma) < r_s) ++outages;
  }
  SopPoint pt;
  pt.r_s = r_s;
  pt.p_dbm = s.p_dbm;
  pt.alpha = alpha;
  pt.samples = n;
  pt.outages = outages;
  pt.sop_mc = static_cast<double>(outages) / static_cast<double>(n);
  const WilsonInterval ci = wilson95(outages, n);
  pt.ci95_low = ci.low;
  pt.ci95_high = ci.high;
  pt.ci95_halfwidth = ci.halfwidth();
  if (!collinear(s)) pt.sop_theory = sop_theory(s, r_s);
  return pt;
}

}  // namespace rasec
