#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "rasec/errors.hpp"

namespace rasec {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  constexpr bool operator==(const Vec3&) const = default;
};

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) { return std::hypot(v.x, v.y, v.z); }

inline Vec3 normalized(const Vec3& v) {
  const double n = norm(v);
  if (!(n >= 1e-12)) throw DegenerateGeometry("cannot normalize a zero-length vector");
  return v / n;
}

inline double deg2rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / std::numbers::pi; }

/// Point at distance `d` in the x-z plane, `elevation_deg` measured from the x-axis.
inline Vec3 xz_position(double d, double elevation_deg) {
  const double t = deg2rad(elevation_deg);
  return {d * std::cos(t), 0.0, d * std::sin(t)};
}

enum class LinkEnd { user, eavesdropper };

inline const char* to_string(LinkEnd end) {
  return end == LinkEnd::user ? "user" : "eavesdropper";
}

/// Zenith angle from +z and azimuth of the x-y projection from +x.
struct DeflectionAngles {
  double theta_z = 0.0;  // [0, pi]
  double theta_a = 0.0;  // (-pi, pi]
};

/// Unit direction for a pair of deflection angles.
inline Vec3 direction_from_angles(const DeflectionAngles& a) {
  const double sz = std::sin(a.theta_z);
  return {sz * std::cos(a.theta_a), sz * std::sin(a.theta_a), std::cos(a.theta_z)};
}

inline DeflectionAngles deflection_angles(const Vec3& v) {
  const Vec3 u = normalized(v);
  DeflectionAngles a;
  a.theta_z = std::acos(std::clamp(u.z, -1.0, 1.0));
  // atan2 keeps the quadrant; a plain arctan of y/x would fold x < 0 onto x > 0.
  a.theta_a = std::atan2(u.y, u.x);
  if (a.theta_a == -std::numbers::pi) a.theta_a = std::numbers::pi;
  return a;
}

struct Boresight {
  double alpha = 1.0;
  Vec3 direction;  // unit
  DeflectionAngles angles;
};

/// Full link parameterization. Defaults reproduce the reference simulation setup:
/// user at 50 m / 60 deg, eavesdropper at 70 m / 30 deg in the x-z plane, 2.4 GHz.
struct Scenario {
  Vec3 q_b = xz_position(50.0, 60.0);
  Vec3 q_e = xz_position(70.0, 30.0);
  double zeta_0 = 1e-3;  // linear power gain at 1 m
  double beta_b = 3.0;
  double beta_e = 3.0;
  double K_b = 1.0;
  double K_e = 1.0;
  double G_0 = 4.0;
  double lambda = 0.125;  // m
  double sigma2_dbm = -60.0;
  double p_dbm = 16.0;

  const Vec3& position(LinkEnd end) const { return end == LinkEnd::user ? q_b : q_e; }
  double beta(LinkEnd end) const { return end == LinkEnd::user ? beta_b : beta_e; }
  double rician_k(LinkEnd end) const { return end == LinkEnd::user ? K_b : K_e; }
};

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

/// Transmit SNR P / sigma^2 as a linear power ratio. The 1e-3 factors of the
/// two dBm conversions cancel, so this is just a dB difference.
inline double snr_linear(const Scenario& s) { return std::pow(10.0, (s.p_dbm - s.sigma2_dbm) / 10.0); }

inline double snr_linear(double p_dbm, double sigma2_dbm) {
  return std::pow(10.0, (p_dbm - sigma2_dbm) / 10.0);
}

/// Throws ValidationError naming the first violated invariant.
inline void validate(const Scenario& s) {
  auto finite = [](const Vec3& v) {
    return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
  };
  if (!finite(s.q_b) || !(norm(s.q_b) > 0.0)) throw ValidationError("q_b must be finite and nonzero");
  if (!finite(s.q_e) || !(norm(s.q_e) > 0.0)) throw ValidationError("q_e must be finite and nonzero");
  if (!(s.zeta_0 > 0.0) || !std::isfinite(s.zeta_0)) throw ValidationError("zeta_0 must be > 0");
  if (!(s.beta_b > 0.0) || !std::isfinite(s.beta_b)) throw ValidationError("beta_b must be > 0");
  if (!(s.beta_e > 0.0) || !std::isfinite(s.beta_e)) throw ValidationError("beta_e must be > 0");
  if (!(s.K_b >= 0.0) || !std::isfinite(s.K_b)) throw ValidationError("K_b must be >= 0");
  if (!(s.K_e >= 0.0) || !std::isfinite(s.K_e)) throw ValidationError("K_e must be >= 0");
  if (!(s.G_0 > 0.0) || !std::isfinite(s.G_0)) throw ValidationError("G_0 must be > 0");
  if (!(s.lambda > 0.0) || !std::isfinite(s.lambda)) throw ValidationError("lambda must be > 0");
  if (!std::isfinite(s.p_dbm) || !std::isfinite(s.sigma2_dbm))
    throw ValidationError("p_dbm and sigma2_dbm must be finite");
  const double g = snr_linear(s);
  if (!(g > 0.0) || !std::isfinite(g)) throw ValidationError("SNR must be finite and > 0");
  const double d0 = dot(s.q_e, s.q_e);
  if (!(d0 - dot(s.q_b, s.q_e) > 0.0))
    throw ValidationError("alpha_max undefined: |q_e|^2 <= q_b.q_e");
}

/// Line-of-boresight coefficients: q_a(alpha) = q_e + alpha * qbar, qbar = q_b - q_e.
struct LineCoefficients {
  Vec3 qbar;
  double d0 = 0.0;  // |q_e|^2
  double d1 = 0.0;  // qbar . q_e
  double d2 = 0.0;  // |qbar|^2
};

inline LineCoefficients line_coefficients(const Scenario& s) {
  LineCoefficients c;
  c.qbar = s.q_b - s.q_e;
  c.d0 = dot(s.q_e, s.q_e);
  c.d1 = dot(c.qbar, s.q_e);
  c.d2 = dot(c.qbar, c.qbar);
  return c;
}

/// Adjustment factor at which the boresight becomes orthogonal to q_e.
inline double alpha_max(const Scenario& s) {
  const double d0 = dot(s.q_e, s.q_e);
  const double denom = d0 - dot(s.q_b, s.q_e);
  if (!(denom > 0.0)) throw AlphaMaxUndefined("|q_e|^2 - q_b.q_e <= 0: boresight never orthogonal to q_e");
  return d0 / denom;
}

/// Upper end of the search interval [1, max(1, alpha_max)]. When the eavesdropper
/// is already behind the array at alpha = 1 the interval collapses to {1}.
inline double alpha_upper(const Scenario& s) { return std::max(1.0, alpha_max(s)); }

inline bool eavesdropper_behind(const Scenario& s) { return dot(s.q_b, s.q_e) < 0.0; }

inline Vec3 boresight_vector(const Scenario& s, double alpha) { return s.q_e + alpha * (s.q_b - s.q_e); }

inline Boresight boresight_from_alpha(const Scenario& s, double alpha) {
  const Vec3 v = boresight_vector(s, alpha);
  if (!(norm(v) >= 1e-12)) throw DegenerateGeometry("boresight q_e + alpha (q_b - q_e) has zero length");
  Boresight b;
  b.alpha = alpha;
  b.direction = normalized(v);
  b.angles = deflection_angles(v);
  return b;
}

inline double cos_epsilon(const Vec3& direction, const Vec3& q) {
  const double nd = norm(direction);
  const double nq = norm(q);
  if (!(nd > 0.0) || !(nq > 0.0)) throw DegenerateGeometry("cos_epsilon of a zero vector");
  return std::clamp(dot(direction, q) / (nd * nq), -1.0, 1.0);
}

/// Cosine antenna pattern: g0 cos(eps) inside the front half-space, 0 behind it.
inline double effective_gain(const Vec3& direction, const Vec3& q, double g0) {
  const double c = cos_epsilon(direction, q);
  return c >= 0.0 ? g0 * c : 0.0;
}

/// Inverse of Phi_i(alpha): cosine between the boresight at `alpha` and q_i.
/// The eavesdropper projection d0 + alpha d1 is snapped to zero when it is only
/// rounding noise, so the gain at alpha_max is exactly zero.
inline double phi_inv(const Scenario& s, double alpha, LinkEnd end) {
  const Vec3 v = boresight_vector(s, alpha);
  const double nv = norm(v);
  if (!(nv >= 1e-12)) throw DegenerateGeometry("boresight has zero length");
  const Vec3& q = s.position(end);
  const double nq = norm(q);
  double num = 0.0;
  if (end == LinkEnd::eavesdropper) {
    const LineCoefficients c = line_coefficients(s);
    num = c.d0 + alpha * c.d1;
    if (std::abs(num) <= 8.0 * std::numeric_limits<double>::epsilon() * (c.d0 + std::abs(alpha * c.d1)))
      num = 0.0;
  } else {
    num = dot(v, q);
  }
  return std::clamp(num / (nv * nq), -1.0, 1.0);
}

/// Angle BAE between q_b and q_e at the antenna, in [0, pi].
inline double angle_bae(const Scenario& s) {
  if (!(norm(s.q_b) > 0.0) || !(norm(s.q_e) > 0.0)) throw DegenerateGeometry("zero position vector");
  return std::atan2(norm(cross(s.q_b, s.q_e)), dot(s.q_b, s.q_e));
}

inline double sin_bae(const Scenario& s) {
  return norm(cross(s.q_b, s.q_e)) / (norm(s.q_b) * norm(s.q_e));
}

/// Collinearity threshold on sin(angle BAE).
inline constexpr double kCollinearSinTol = 1e-10;

inline bool collinear(const Scenario& s) { return sin_bae(s) < kCollinearSinTol; }

/// Psi(alpha) = Phi_e / Phi_b, i.e. cos(eps_b) / cos(eps_e). Nondecreasing on [1, alpha_max).
inline double psi(const Scenario& s, double alpha) {
  return phi_inv(s, alpha, LinkEnd::user) / phi_inv(s, alpha, LinkEnd::eavesdropper);
}

}  // namespace rasec
