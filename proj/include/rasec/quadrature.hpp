#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "rasec/errors.hpp"

namespace rasec {

enum class TailStrategy {
  scan,  // walk outward until the integrand stays below truncation_tol * peak, then truncate
  map,   // substitute x = a + t / (1 - t) and integrate over t in [0, 1)
};

struct QuadratureSpec {
  double abs_tol = 1e-8;
  double rel_tol = 1e-8;
  int max_subdivisions = 2000;
  TailStrategy tail = TailStrategy::scan;
  double truncation_tol = 1e-14;
  int quiet_probes = 8;
};

inline void check(const QuadratureSpec& spec) {
  if (!(spec.abs_tol > 0.0) || !(spec.rel_tol > 0.0))
    throw ValidationError("quadrature tolerances must be > 0");
  if (spec.max_subdivisions < 1) throw ValidationError("max_subdivisions must be >= 1");
  if (!(spec.truncation_tol > 0.0)) throw ValidationError("truncation_tol must be > 0");
}

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;
  int subdivisions = 0;
  int evaluations = 0;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15 constants).
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment gauss_kronrod15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  double resabs = std::abs(kronrod);
  double fv1[7], fv2[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    fv1[j] = f(center - dx);
    fv2[j] = f(center + dx);
    kronrod += kWgk[j] * (fv1[j] + fv2[j]);
    resabs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
    if (j % 2 == 1) gauss += kWg[j / 2] * (fv1[j] + fv2[j]);
  }
  const double mean = 0.5 * kronrod;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));

  const double value = kronrod * half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);
  double err = std::abs((kronrod - gauss) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
  return {a, b, value, err};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) integration of f over [a, b]. Optional
/// interior breakpoints seed the initial partition. Throws NonConvergent when the
/// subdivision budget runs out before max(abs_tol, rel_tol |I|) is met.
template <class F>
QuadResult integrate(F&& f, double a, double b, const QuadratureSpec& spec,
                     std::span<const double> breakpoints = {}) {
  check(spec);
  QuadResult out;
  if (a == b) return out;
  int evals = 0;
  auto counted = [&](double x) {
    ++evals;
    return static_cast<double>(f(x));
  };

  std::vector<double> cuts{a};
  for (double p : breakpoints)
    if (p > std::min(a, b) && p < std::max(a, b)) cuts.push_back(p);
  cuts.push_back(b);
  if (a < b) std::sort(cuts.begin(), cuts.end());
  else std::sort(cuts.begin(), cuts.end(), std::greater<>());

  std::priority_queue<detail::Segment> heap;
  double total = 0.0;
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i] == cuts[i + 1]) continue;
    auto seg = detail::gauss_kronrod15(counted, cuts[i], cuts[i + 1]);
    total += seg.value;
    total_err += seg.error;
    heap.push(seg);
  }
  int subdivisions = 0;
  while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
    if (subdivisions >= spec.max_subdivisions) {
      throw NonConvergent("adaptive quadrature: subdivision budget exhausted (estimate " +
                          std::to_string(total) + ", error " + std::to_string(total_err) + ")");
    }
    const detail::Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid == worst.a || mid == worst.b) {
      throw NonConvergent("adaptive quadrature: interval collapsed to machine resolution");
    }
    const auto left = detail::gauss_kronrod15(counted, worst.a, mid);
    const auto right = detail::gauss_kronrod15(counted, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++subdivisions;
  }

  // Re-sum to shed the drift of the running updates.
  double sum = 0.0, err = 0.0;
  while (!heap.empty()) {
    sum += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  out.value = sum;
  out.abs_error = err;
  out.subdivisions = subdivisions;
  out.evaluations = evals;
  return out;
}

/// Integral of f over [a, inf). `scale` is a hint for the width of the integrand's
/// bulk; the scan strategy steps outward from a in increments starting at scale / 8.
/// `breakpoints` are added to the scan's partition (ignored by the map strategy).
template <class F>
QuadResult integrate_semi_infinite(F&& f, const QuadratureSpec& spec, double a = 0.0, double scale = 1.0,
                                   std::span<const double> breakpoints = {}) {
  check(spec);
  if (!(scale > 0.0) || !std::isfinite(scale)) throw ValidationError("integration scale must be > 0");

  if (spec.tail == TailStrategy::map) {
    auto g = [&](double t) {
      if (t >= 1.0) return 0.0;
      const double one_minus = 1.0 - t;
      const double x = a + scale * t / one_minus;
      const double v = static_cast<double>(f(x));
      return v == 0.0 ? 0.0 : v * scale / (one_minus * one_minus);
    };
    return integrate(g, 0.0, 1.0, spec);
  }

  constexpr int kMaxProbes = 4000;
  constexpr int kZeroProbes = 64;
  double h = scale / 8.0;
  double x = a;
  double peak = std::abs(static_cast<double>(f(x)));
  int quiet = 0;
  int probes = 1;
  std::vector<double> breaks;
  while (true) {
    x += h;
    h *= 1.1;
    ++probes;
    const double v = std::abs(static_cast<double>(f(x)));
    if (!std::isfinite(v)) throw NonConvergent("semi-infinite quadrature: integrand not finite at " + std::to_string(x));
    if (v > peak) {
      peak = v;
      quiet = 0;
    } else if (v <= spec.truncation_tol * peak) {
      ++quiet;
    } else {
      quiet = 0;
    }
    if (probes % 8 == 0) breaks.push_back(x);
    if (peak > 0.0 && quiet >= spec.quiet_probes) break;
    if (peak == 0.0 && probes >= kZeroProbes) return {};
    if (probes >= kMaxProbes) throw NonConvergent("semi-infinite quadrature: integrand tail never decayed");
  }
  breaks.insert(breaks.end(), breakpoints.begin(), breakpoints.end());
  QuadResult r = integrate(f, a, x, spec, breaks);
  r.evaluations += probes;
  return r;
}

}  // namespace rasec
