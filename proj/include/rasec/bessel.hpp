#pragma once

#include <cmath>
#include <limits>
#include <numbers>

namespace rasec {

// Modified Bessel functions of the first kind, orders 0 and 1, for x >= 0.
// Power series below kBesselCrossover, Hankel asymptotic expansion
// e^x / sqrt(2 pi x) * sum_k (-1)^k prod_j (mu - (2j-1)^2) / (k! (8x)^k) above it.
// The *_scaled variants return e^{-x} I_nu(x) and never overflow.

inline constexpr double kBesselCrossover = 15.0;

namespace detail {

/// sum_k (x^2/4)^k / (k! (k+nu)!) times (x/2)^nu, for nu in {0, 1}.
inline double bessel_i_series(int nu, double x) {
  const double q = 0.25 * x * x;
  double term = nu == 0 ? 1.0 : 0.5 * x;
  double sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<double>(k) * static_cast<double>(k + nu));
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return sum;
}

/// The bracketed correction series of the asymptotic expansion.
inline double bessel_i_asymptotic_series(int nu, double x) {
  const double mu = 4.0 * nu * nu;
  double term = 1.0;
  double sum = 1.0;
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= -(mu - odd * odd) / (k * 8.0 * x);
    const double mag = std::abs(term);
    if (mag >= prev) break;  // series is asymptotic; stop at its smallest term
    sum += term;
    prev = mag;
    if (mag < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

inline double bessel_i_scaled(int nu, double x) {
  if (x < kBesselCrossover) return std::exp(-x) * bessel_i_series(nu, x);
  return bessel_i_asymptotic_series(nu, x) / std::sqrt(2.0 * std::numbers::pi * x);
}

inline double log_bessel_i(int nu, double x) {
  if (x < kBesselCrossover) return std::log(bessel_i_series(nu, x));
  return x - 0.5 * std::log(2.0 * std::numbers::pi * x) + std::log(bessel_i_asymptotic_series(nu, x));
}

}  // namespace detail

inline double bessel_i0_scaled(double x) { return detail::bessel_i_scaled(0, x); }
inline double bessel_i1_scaled(double x) { return detail::bessel_i_scaled(1, x); }

inline double bessel_i0(double x) {
  if (x < kBesselCrossover) return detail::bessel_i_series(0, x);
  return std::exp(detail::log_bessel_i(0, x));
}

inline double bessel_i1(double x) {
  if (x < kBesselCrossover) return detail::bessel_i_series(1, x);
  return std::exp(detail::log_bessel_i(1, x));
}

inline double log_bessel_i0(double x) { return detail::log_bessel_i(0, x); }

/// log I_1(x); -inf at x = 0.
inline double log_bessel_i1(double x) {
  if (x == 0.0) return -std::numeric_limits<double>::infinity();
  return detail::log_bessel_i(1, x);
}

}  // namespace rasec
