#pragma once

#include <cmath>
#include <stdexcept>

namespace rasec {

struct LineSearchResult {
  double x = 0.0;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
  double bracket_width = 0.0;
};

/// Golden-section maximization of a unimodal f on [lo, hi] down to a bracket of
/// width <= tol. The endpoints are evaluated as well and win if they are better
/// than the interior estimate, so monotone objectives land on the boundary.
template <class F>
LineSearchResult maximize_unimodal(F&& f, double lo, double hi, double tol, int max_iterations = 500) {
  if (!(tol > 0.0)) throw std::invalid_argument("maximize_unimodal: tol must be > 0");
  if (!(hi >= lo)) throw std::invalid_argument("maximize_unimodal: empty interval");
  LineSearchResult r;
  if (hi == lo) {
    r.x = lo;
    r.value = f(lo);
    r.evaluations = 1;
    return r;
  }
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  r.evaluations = 2;
  while (b - a > tol && r.iterations < max_iterations) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    ++r.evaluations;
    ++r.iterations;
  }
  r.bracket_width = b - a;
  if (fc >= fd) {
    r.x = c;
    r.value = fc;
  } else {
    r.x = d;
    r.value = fd;
  }
  const double f_lo = f(lo);
  const double f_hi = f(hi);
  r.evaluations += 2;
  if (f_lo > r.value) {
    r.x = lo;
    r.value = f_lo;
  }
  if (f_hi > r.value) {
    r.x = hi;
    r.value = f_hi;
  }
  return r;
}

}  // namespace rasec
