#pragma once

#include <algorithm>
#include <cmath>
#include <utility>

#include "morse/errors.hpp"
#include "morse/summation.hpp"

namespace morse {

struct QuadratureControl {
  double abs_tol = 0.0;
  double rel_tol = 1e-10;
  int max_depth = 40;
  // Relative noise carried by each integrand evaluation. Refinement cannot
  // resolve differences below the noise of the panel values themselves, so
  // a panel is accepted once the two-half difference is within this times
  // the panel magnitude. The default is a few ulps for exact integrands;
  // integrands that are quadratures themselves must raise it.
  double noise_rel = 1e-15;
};

namespace detail {

inline constexpr double kGaussNode[15] = {
    -0.98799251802048543, -0.93727339240070590, -0.84820658341042722,
    -0.72441773136017005, -0.57097217260853885, -0.39415134707756337,
    -0.20119409399743452, 0.0,                  0.20119409399743452,
    0.39415134707756337,  0.57097217260853885,  0.72441773136017005,
    0.84820658341042722,  0.93727339240070590,  0.98799251802048543};

inline constexpr double kGaussWeight[15] = {
    0.030753241996117268, 0.070366047488108125, 0.10715922046717194,
    0.13957067792615431,  0.16626920581699393,  0.18616100001556221,
    0.19843148532711158,  0.20257824192556127,  0.19843148532711158,
    0.18616100001556221,  0.16626920581699393,  0.13957067792615431,
    0.10715922046717194,  0.070366047488108125, 0.030753241996117268};

template <class F>
double gauss15(F& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  StableSum s;
  for (int i = 0; i < 15; ++i)
    s.add(kGaussWeight[i] * f(mid + half * kGaussNode[i]));
  return half * s.get();
}

template <class F>
double refine(F& f, double a, double b, double whole, double tol_per_len,
              double noise_rel, int depth, int max_depth) {
  const double m = 0.5 * (a + b);
  const double left = gauss15(f, a, m);
  const double right = gauss15(f, m, b);
  const double err = std::abs(left + right - whole);
  if (err <= tol_per_len * (b - a) ||
      err <= noise_rel * (std::abs(left) + std::abs(right)))
    return left + right;
  if (depth >= max_depth)
    throw QuadratureNonConvergence(
        "adaptive quadrature exceeded the bisection depth limit");
  return refine(f, a, m, left, tol_per_len, noise_rel, depth + 1, max_depth) +
         refine(f, m, b, right, tol_per_len, noise_rel, depth + 1, max_depth);
}

}  // namespace detail

// Adaptive bisection with a fixed 15-point Gauss rule per panel. A panel is
// accepted when the two-half refinement moves its value by no more than the
// length-proportional share of the combined absolute + relative budget.
// Deterministic: evaluation and accumulation order are fixed.
template <class F>
double adaptive_integrate(F&& f, double lo, double hi,
                          const QuadratureControl& ctl = {}) {
  if (!(lo < hi)) return 0.0;
  const double whole = detail::gauss15(f, lo, hi);
  double tol = std::max(ctl.abs_tol, ctl.rel_tol * std::abs(whole));
  // Floor keeps regions where the integrand underflows from refining forever.
  tol = std::max(tol, 1e-280);
  return detail::refine(f, lo, hi, whole, tol / (hi - lo), ctl.noise_rel, 0,
                        ctl.max_depth);
}

}  // namespace morse
