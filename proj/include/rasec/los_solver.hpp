#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include "rasec/channel.hpp"
#include "rasec/errors.hpp"
#include "rasec/geometry.hpp"

namespace rasec {

/// LoS-only secrecy capacity [log2(1 + gamma L_b G_0 Phi_b^-1) - log2(1 + gamma L_e G_0 Phi_e^-1)]^+,
/// with a negative projection counting as zero gain.
inline double cs_los(const Scenario& s, double alpha) {
  const double gamma = snr_linear(s);
  return instant_secrecy_capacity(mean_channel_power(s, alpha, LinkEnd::user),
                                  mean_channel_power(s, alpha, LinkEnd::eavesdropper), gamma);
}

/// Every constant of the closed-form analysis for one scenario.
struct LosCoefficients {
  double gamma = 0.0;
  double L_b = 0.0, L_e = 0.0;
  double norm_b = 0.0, norm_e = 0.0;
  double r_b0 = 0.0, r_b1 = 0.0, r_e0 = 0.0, r_e1 = 0.0;
  double d0 = 0.0, d1 = 0.0, d2 = 0.0;
  double rho_b0 = 0.0, rho_b1 = 0.0, rho_e0 = 0.0, rho_e1 = 0.0;
  double w = 0.0;      // (q_b.q_e)^2 - |q_b|^2 |q_e|^2 <= 0
  double kappa = 0.0;  // (gamma L_b L_e G_0)^2
  double zeta0 = 0.0, zeta1 = 0.0, zeta2 = 0.0;
  double alpha_tilde = 0.0;  // root of Upsilon_1; +inf when L_b |q_e| = L_e |q_b|
  double alpha_star = 0.0;   // minimizer of Upsilon_2
  double v_norm2 = 0.0;      // |L_b |q_b| q_e - L_e |q_e| q_b|^2
  double upsilon_slope = 0.0;  // M = gamma L_b L_e G_0 / (|q_b| |q_e|)

  /// zeta1^2 - 4 zeta2 zeta0 in its factored form 4 kappa (kappa w + |v|^2).
  double discriminant() const { return 4.0 * kappa * (kappa * w + v_norm2); }

  double s_of(double alpha) const { return std::sqrt(std::max(0.0, d2 * alpha * alpha + 2.0 * d1 * alpha + d0)); }

  /// (L_b/|q_b| - L_e/|q_e|) alpha - L_b/|q_b|
  double upsilon1(double alpha) const { return (L_b / norm_b - L_e / norm_e) * alpha - L_b / norm_b; }

  double upsilon2(double alpha) const { return upsilon_slope * s_of(alpha); }
};

inline LosCoefficients compute_coefficients(const Scenario& s) {
  LosCoefficients c;
  c.gamma = snr_linear(s);
  c.L_b = large_scale(s, LinkEnd::user);
  c.L_e = large_scale(s, LinkEnd::eavesdropper);
  c.norm_b = norm(s.q_b);
  c.norm_e = norm(s.q_e);
  const LineCoefficients line = line_coefficients(s);
  c.d0 = line.d0;
  c.d1 = line.d1;
  c.d2 = line.d2;

  const double kb = c.gamma * c.L_b * s.G_0 / c.norm_b;
  const double ke = c.gamma * c.L_e * s.G_0 / c.norm_e;
  c.r_b0 = kb * dot(s.q_e, s.q_b);
  c.r_b1 = kb * dot(line.qbar, s.q_b);
  c.r_e0 = ke * dot(s.q_e, s.q_e);
  c.r_e1 = ke * dot(line.qbar, s.q_e);
  c.rho_b0 = c.r_b1 * c.d0 - c.r_b0 * c.d1;
  c.rho_b1 = c.r_b1 * c.d1 - c.r_b0 * c.d2;
  c.rho_e0 = c.r_e1 * c.d0 - c.r_e0 * c.d1;
  c.rho_e1 = c.r_e1 * c.d1 - c.r_e0 * c.d2;

  // Lagrange's identity: w = -|q_b x q_e|^2, which avoids the cancellation of the
  // textbook form near collinearity.
  const Vec3 cr = cross(s.q_b, s.q_e);
  c.w = -dot(cr, cr);
  const double m = c.gamma * c.L_b * c.L_e * s.G_0;
  c.kappa = m * m;
  c.upsilon_slope = m / (c.norm_b * c.norm_e);

  const double lb_ne = c.L_b * c.norm_e;
  const double le_nb = c.L_e * c.norm_b;
  c.zeta2 = (lb_ne - le_nb) * (lb_ne - le_nb) - c.kappa * c.d2;
  c.zeta1 = -2.0 * c.L_b * c.L_b * c.d0 + 2.0 * c.L_b * c.L_e * c.norm_b * c.norm_e - 2.0 * c.kappa * c.d1;
  c.zeta0 = (c.L_b * c.L_b - c.kappa) * c.d0;

  const double denom = lb_ne - le_nb;
  c.alpha_tilde = denom != 0.0 ? lb_ne / denom : std::numeric_limits<double>::infinity();
  c.alpha_star = c.d2 > 0.0 ? -c.d1 / c.d2 : std::numeric_limits<double>::infinity();

  const Vec3 v = (c.L_b * c.norm_b) * s.q_e - (c.L_e * c.norm_e) * s.q_b;
  c.v_norm2 = dot(v, v);
  return c;
}

/// Relative residuals of the four product identities that reduce the stationarity
/// condition to a single square-root equation:
///   r_b1 rho_e1 - r_e1 rho_b1 = d2 X,   r_b1 rho_e0 - r_e1 rho_b0 = d1 X,
///   r_b0 rho_e1 - r_e0 rho_b1 = d1 X,   r_b0 rho_e0 - r_e0 rho_b0 = d0 X,
/// with X = r_e1 r_b0 - r_b1 r_e0. Each residual is scaled by the magnitude of the
/// terms that enter it, so it measures rounding rather than absolute size.
inline std::array<double, 4> identity_residuals(const LosCoefficients& c) {
  const double x = c.r_e1 * c.r_b0 - c.r_b1 * c.r_e0;
  const double xs = std::abs(c.r_e1 * c.r_b0) + std::abs(c.r_b1 * c.r_e0);
  // magnitudes of rho before cancellation
  const double mb0 = std::abs(c.r_b1 * c.d0) + std::abs(c.r_b0 * c.d1);
  const double mb1 = std::abs(c.r_b1 * c.d1) + std::abs(c.r_b0 * c.d2);
  const double me0 = std::abs(c.r_e1 * c.d0) + std::abs(c.r_e0 * c.d1);
  const double me1 = std::abs(c.r_e1 * c.d1) + std::abs(c.r_e0 * c.d2);
  auto rel = [](double lhs, double rhs, double scale) {
    return scale > 0.0 ? std::abs(lhs - rhs) / scale : std::abs(lhs - rhs);
  };
  return {
      rel(c.r_b1 * c.rho_e1 - c.r_e1 * c.rho_b1, c.d2 * x,
          std::abs(c.r_b1) * me1 + std::abs(c.r_e1) * mb1 + std::abs(c.d2) * xs),
      rel(c.r_b1 * c.rho_e0 - c.r_e1 * c.rho_b0, c.d1 * x,
          std::abs(c.r_b1) * me0 + std::abs(c.r_e1) * mb0 + std::abs(c.d1) * xs),
      rel(c.r_b0 * c.rho_e1 - c.r_e0 * c.rho_b1, c.d1 * x,
          std::abs(c.r_b0) * me1 + std::abs(c.r_e0) * mb1 + std::abs(c.d1) * xs),
      rel(c.r_b0 * c.rho_e0 - c.r_e0 * c.rho_b0, c.d0 * x,
          std::abs(c.r_b0) * me0 + std::abs(c.r_e0) * mb0 + std::abs(c.d0) * xs),
  };
}

/// SNR threshold above which the LoS optimum sits at alpha_max:
/// gamma0 = |L_b |q_b| q_e - L_e |q_e| q_b| / (L_b L_e G_0 sqrt(-w)).
inline double gamma0(const Scenario& s) {
  if (collinear(s)) throw CollinearGeometry("gamma0 undefined: user and eavesdropper are collinear");
  const LosCoefficients c = compute_coefficients(s);
  return std::sqrt(c.v_norm2) / (c.L_b * c.L_e * s.G_0 * std::sqrt(-c.w));
}

enum class LosBranch {
  CollinearUserFirst,
  CollinearZeroCapacity,
  EavesdropperBehind,
  EavesdropperStrongerBoundary,
  HighSnrBoundary,
  TangentBoundary,
  TangentInterior,
  QuadraticInterior,
  LinearInterior,
  Prop7Boundary,
};

inline const char* to_string(LosBranch b) {
  switch (b) {
    case LosBranch::CollinearUserFirst: return "CollinearUserFirst";
    case LosBranch::CollinearZeroCapacity: return "CollinearZeroCapacity";
    case LosBranch::EavesdropperBehind: return "EavesdropperBehind";
    case LosBranch::EavesdropperStrongerBoundary: return "EavesdropperStrongerBoundary";
    case LosBranch::HighSnrBoundary: return "HighSnrBoundary";
    case LosBranch::TangentBoundary: return "TangentBoundary";
    case LosBranch::TangentInterior: return "TangentInterior";
    case LosBranch::QuadraticInterior: return "QuadraticInterior";
    case LosBranch::LinearInterior: return "LinearInterior";
    case LosBranch::Prop7Boundary: return "Prop7Boundary";
  }
  return "unknown";
}

struct LosSolution {
  LosBranch branch = LosBranch::CollinearUserFirst;
  double alpha_opt = 1.0;
  std::optional<double> gamma0;
  double capacity = 0.0;  // cs_los at alpha_opt
  bool clamped = false;   // interior root was pulled back into [1, alpha_max]
  double raw_root = std::numeric_limits<double>::quiet_NaN();
  bool root_validated = true;  // root satisfies the unsquared stationarity equation
};

inline constexpr double kZeta2ZeroTol = 1e-12;
inline constexpr double kGamma0RelTol = 1e-10;
inline constexpr double kRootCheckRelTol = 1e-8;

/// Root of zeta2 a^2 + zeta1 a + zeta0 = 0 of the form (-zeta1 + sqrt(D)) / (2 zeta2),
/// evaluated without cancellation.
inline double quadratic_plus_root(const LosCoefficients& c) {
  const double sq = std::sqrt(std::max(0.0, c.discriminant()));
  if (c.zeta1 <= 0.0) return (-c.zeta1 + sq) / (2.0 * c.zeta2);
  return 2.0 * c.zeta0 / (-c.zeta1 - sq);
}

/// Closed-form maximizer of cs_los over [1, alpha_max], following the complete case
/// analysis: collinear geometry, eavesdropper-favoured path loss, the SNR threshold
/// gamma0, and the sign of zeta2 together with alpha_tilde versus alpha_star below it.
inline LosSolution solve_near_optimal(const Scenario& s) {
  const double amax = alpha_max(s);
  const LosCoefficients c = compute_coefficients(s);
  LosSolution sol;
  auto finish = [&](LosBranch b, double alpha) {
    sol.branch = b;
    sol.alpha_opt = alpha;
    sol.capacity = cs_los(s, alpha);
    return sol;
  };
  auto interior = [&](LosBranch b, double root) {
    sol.raw_root = root;
    const double up = std::abs(c.upsilon1(root));
    const double rhs = c.upsilon2(root);
    sol.root_validated = std::abs(c.upsilon1(root) - rhs) <= kRootCheckRelTol * std::max(up, rhs);
    const double clamped = std::clamp(root, 1.0, amax);
    sol.clamped = clamped != root;
    return finish(b, clamped);
  };

  if (eavesdropper_behind(s)) return finish(LosBranch::EavesdropperBehind, 1.0);

  if (collinear(s)) {
    return finish(c.L_b > c.L_e ? LosBranch::CollinearUserFirst : LosBranch::CollinearZeroCapacity, 1.0);
  }
  sol.gamma0 = std::sqrt(c.v_norm2) / (c.L_b * c.L_e * s.G_0 * std::sqrt(-c.w));

  if (c.L_b / c.norm_b < c.L_e / c.norm_e) return finish(LosBranch::EavesdropperStrongerBoundary, amax);

  if (c.kappa == 0.0) return interior(LosBranch::TangentInterior, c.alpha_tilde);

  const double g0 = *sol.gamma0;
  if (std::abs(c.gamma - g0) <= kGamma0RelTol * g0) return finish(LosBranch::TangentBoundary, amax);
  if (c.gamma > g0) return finish(LosBranch::HighSnrBoundary, amax);

  const bool zeta2_zero = std::abs(c.zeta2) < kZeta2ZeroTol * std::max(std::abs(c.zeta0), std::abs(c.zeta1));
  if (zeta2_zero) {
    if (c.alpha_tilde < c.alpha_star) return interior(LosBranch::LinearInterior, c.zeta0 / -c.zeta1);
    return finish(LosBranch::Prop7Boundary, amax);
  }
  if (c.zeta2 > 0.0 || c.alpha_tilde < c.alpha_star) {
    return interior(LosBranch::QuadraticInterior, quadratic_plus_root(c));
  }
  return finish(LosBranch::Prop7Boundary, amax);
}

}  // namespace rasec
