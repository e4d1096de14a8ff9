#pragma once

#include <cmath>
#include <cstddef>

namespace mapseg::detail {

struct QuadratureResult {
  double value = 0.0;
  std::size_t evaluations = 0;
};

namespace quadrature_impl {

template <class F>
double simpson_step(F& f, double a, double b, double fa, double fm, double fb, double whole,
                    double tol, int depth, std::size_t& evals) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  evals += 2;
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double diff = left + right - whole;
  if (depth <= 0 || std::abs(diff) <= 15.0 * tol) {
    return left + right + diff / 15.0;
  }
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, evals) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, evals);
}

}  // namespace quadrature_impl

/// Adaptive Simpson quadrature of `f` over [a, b] to absolute tolerance
/// `tol`. `f` must be finite at both endpoints.
template <class F>
QuadratureResult adaptive_simpson(F f, double a, double b, double tol, int max_depth = 50) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  QuadratureResult r;
  r.evaluations = 3;
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  r.value = quadrature_impl::simpson_step(f, a, b, fa, fm, fb, whole, tol, max_depth,
                                          r.evaluations);
  return r;
}

}  // namespace mapseg::detail
