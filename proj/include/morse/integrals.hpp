#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "morse/errors.hpp"
#include "morse/hermitian.hpp"
#include "morse/pencil.hpp"
#include "morse/polynomial.hpp"
#include "morse/quadrature.hpp"
#include "morse/scene.hpp"
#include "morse/summation.hpp"

namespace morse {

namespace detail {

inline double grade_sign(int q) { return q % 2 == 0 ? 1.0 : -1.0; }

// Chebyshev nodes of the interpolation must cover the integration range.
inline double pencil_node_halfwidth(const TRegion& region) {
  double h = 1.0;
  for (const Interval& iv : region.intervals()) h = std::max(h, iv.hi);
  return h;
}

}  // namespace detail

// (-1)^q * integral of det(A + tB) over T(q), via the exact antiderivative
// of the interpolated determinant polynomial. The independent quadrature
// route lives in boundary_term_quadrature; the two must stay separate.
inline double boundary_term_point(const HermitianMatrix& A,
                                  const HermitianMatrix& B, int q,
                                  const PencilOptions& opts = {}) {
  const TRegion region = t_region(A, B, q, opts);
  if (region.unbounded())
    throw DivergentBoundaryTerm(
        "T(" + std::to_string(q) + ") is unbounded; the t-integral diverges");
  if (region.empty()) return 0.0;

  const Polynomial p =
      det_polynomial(A, B, detail::pencil_node_halfwidth(region));
  StableSum sum;
  for (const Interval& iv : region.intervals())
    sum.add(p.definite_integral(iv.lo, iv.hi));
  return detail::grade_sign(q) * sum.get();
}

// Same value by adaptive quadrature of |det(A + tB)| over T(q). Does not
// touch the polynomial antiderivative; each node evaluates the determinant
// directly, so this is an independent cross-check of the exact path.
inline double boundary_term_quadrature(const HermitianMatrix& A,
                                       const HermitianMatrix& B, int q,
                                       double rel_tol = 1e-10,
                                       const PencilOptions& opts = {}) {
  const TRegion region = t_region(A, B, q, opts);
  if (region.unbounded())
    throw DivergentBoundaryTerm(
        "T(" + std::to_string(q) + ") is unbounded; the t-integral diverges");
  if (region.empty()) return 0.0;

  const Eigen::MatrixXcd& ma = A.matrix();
  const Eigen::MatrixXcd& mb = B.matrix();
  auto abs_det = [&](double t) {
    return std::abs((ma + t * mb).determinant().real());
  };
  QuadratureControl ctl;
  ctl.rel_tol = rel_tol;
  StableSum sum;
  for (const Interval& iv : region.intervals())
    sum.add(adaptive_integrate(abs_det, iv.lo, iv.hi, ctl));
  return sum.get();
}

struct BulkDiagnostics {
  long skipped_degenerate = 0;
};

// (-1)^q * sum of weight * det(theta) over bulk samples of index exactly q.
// Samples with a zero eigenvalue within tolerance belong to no X(q); they
// are skipped and counted.
inline double bulk_term(const Scene& scene, int q, double zero_tol = 0.0,
                        BulkDiagnostics* diagnostics = nullptr) {
  validate_scene(scene);
  const auto& samples = scene.bulk;
  MapReduceResult r =
      blocked_mapreduce(samples.size(), [&](std::size_t i) -> MapReduceItem {
        const BulkSample& s = samples[i];
        const Inertia in = inertia(s.theta, zero_tol);
        if (in.zeros > 0) return {0.0, 1};
        if (in.negatives != q) return {0.0, 0};
        return {s.weight * s.theta.determinant(), 0};
      });
  if (diagnostics) diagnostics->skipped_degenerate = r.count;
  return detail::grade_sign(q) * r.value;
}

namespace detail {

// Weighted boundary-term sum at grade q; divergence reports the offending
// sample index (deterministically the lowest one).
inline double boundary_sum(const std::vector<BoundarySample>& samples, int q,
                           const PencilOptions& opts) {
  MapReduceResult r =
      blocked_mapreduce(samples.size(), [&](std::size_t i) -> MapReduceItem {
        const BoundarySample& s = samples[i];
        try {
          return {s.weight * boundary_term_point(s.theta_tan, s.levi, q, opts),
                  0};
        } catch (const DivergentBoundaryTerm& e) {
          throw DivergentBoundaryTerm(
              std::string(e.what()) + " at boundary sample " +
                  std::to_string(i),
              static_cast<long>(i));
        }
      });
  return r.value;
}

}  // namespace detail

// Asymptotic bound coefficient at grade q: bulk term plus the weighted sum
// of exact boundary t-integrals.
inline double weak_bound(const Scene& scene, int q,
                         const PencilOptions& opts = {},
                         BulkDiagnostics* diagnostics = nullptr) {
  validate_scene(scene);
  const double bulk = bulk_term(scene, q, opts.zero_tol, diagnostics);
  const double boundary = detail::boundary_sum(scene.boundary, q, opts);
  return bulk + boundary;
}

enum class StrongMode { convex, concave };

struct StrongTerm {
  int grade = 0;
  double sign = 1.0;
  double bulk = 0.0;
  double boundary = 0.0;
};

struct StrongBreakdown {
  std::vector<StrongTerm> terms;
  double value = 0.0;
};

// Alternating assembly of the weak-bound terms over a grade range:
//   convex  (boundary strongly q-convex):  I(>= q), grades q..n,
//     sign (-1)^{i-q};
//   concave (boundary strongly q-concave): I(<= n-1-q), grades 0..n-1-q,
//     sign (-1)^{(n-1-q)-i} so the leading grade enters positively.
// Per-grade terms are exposed so either sign reading can be audited.
inline StrongBreakdown strong_bounds_detail(const Scene& scene, int q,
                                            StrongMode mode,
                                            const PencilOptions& opts = {}) {
  validate_scene(scene);
  const int n = scene.n;
  for (std::size_t i = 0; i < scene.boundary.size(); ++i) {
    const Inertia in = inertia(scene.boundary[i].levi, opts.zero_tol);
    const int needed = n - q;
    const int have =
        mode == StrongMode::convex ? in.positives : in.negatives;
    if (have < needed)
      throw ConvexityViolation(
          std::string("boundary sample ") + std::to_string(i) +
              " is not strongly q-" +
              (mode == StrongMode::convex ? "convex" : "concave") +
              ": needs >= " + std::to_string(needed) +
              (mode == StrongMode::convex ? " positive" : " negative") +
              " Levi eigenvalues",
          static_cast<long>(i));
  }

  const int grade_lo = mode == StrongMode::convex ? q : 0;
  const int grade_hi = mode == StrongMode::convex ? n : n - 1 - q;
  const int lead = mode == StrongMode::convex ? grade_lo : grade_hi;

  StrongBreakdown out;
  StableSum total;
  for (int i = grade_lo; i <= grade_hi; ++i) {
    StrongTerm term;
    term.grade = i;
    term.sign = detail::grade_sign(std::abs(i - lead));
    term.bulk = bulk_term(scene, i, opts.zero_tol);
    term.boundary = detail::boundary_sum(scene.boundary, i, opts);
    total.add(term.sign * (term.bulk + term.boundary));
    out.terms.push_back(term);
  }
  out.value = total.get();
  return out;
}

inline double strong_bounds(const Scene& scene, int q, StrongMode mode,
                            const PencilOptions& opts = {}) {
  return strong_bounds_detail(scene, q, mode, opts).value;
}

struct HolefillResult {
  double vol_bundle = 0.0;
  double vol_x = 0.0;
  double vol_boundary_over_n = 0.0;
  double residual = 0.0;
};

// Conformal-boundary volume identity: weak_bound at grade 0 must split into
// the interior volume plus (1/n) of the boundary volume. Requires
// levi = -theta_tan at every boundary sample and index-0 bulk curvature;
// then the t-integral collapses to det(theta_tan) * (1/n) exactly.
inline HolefillResult holefill_check(const Scene& scene,
                                     const PencilOptions& opts = {}) {
  validate_scene(scene);
  for (std::size_t i = 0; i < scene.boundary.size(); ++i) {
    const BoundarySample& s = scene.boundary[i];
    const double scale = std::max(1.0, s.theta_tan.max_abs_entry());
    const double gap =
        (s.levi.matrix() + s.theta_tan.matrix()).cwiseAbs().maxCoeff();
    if (gap > 1e-9 * scale)
      throw NotConformal("boundary sample " + std::to_string(i) +
                             ": levi differs from -theta_tan",
                         static_cast<long>(i));
    const Inertia in = inertia(s.theta_tan, opts.zero_tol);
    if (in.negatives > 0 || in.zeros > 0)
      throw NotConformal("boundary sample " + std::to_string(i) +
                             ": theta_tan is not positive definite",
                         static_cast<long>(i));
  }
  for (std::size_t i = 0; i < scene.bulk.size(); ++i) {
    const Inertia in = inertia(scene.bulk[i].theta, opts.zero_tol);
    if (in.negatives > 0)
      throw NotConformal("bulk sample " + std::to_string(i) +
                             ": theta has a negative eigenvalue",
                         static_cast<long>(i));
  }

  HolefillResult out;
  out.vol_bundle = weak_bound(scene, 0, opts);
  out.vol_x = bulk_term(scene, 0, opts.zero_tol);
  StableSum boundary_vol;
  for (const BoundarySample& s : scene.boundary)
    boundary_vol.add(s.weight * s.theta_tan.determinant());
  out.vol_boundary_over_n = boundary_vol.get() / scene.n;
  out.residual = out.vol_bundle - out.vol_x - out.vol_boundary_over_n;
  return out;
}

// Cobordism identity between two level surfaces: the boundary term at level
// c equals the shell bulk term plus the boundary term at level c'. Returns
// the residual of the supplied quadrature data.
inline double level_invariance_residual(
    const std::vector<BulkSample>& shell_bulk,
    const std::vector<BoundarySample>& boundary_c,
    const std::vector<BoundarySample>& boundary_cprime, int i, int n,
    const PencilOptions& opts = {}) {
  Scene shell;
  shell.n = n;
  shell.bulk = shell_bulk;
  shell.boundary = boundary_c;
  validate_scene(shell);
  shell.boundary = boundary_cprime;
  validate_scene(shell);
  shell.boundary.clear();
  const double term_c = detail::boundary_sum(boundary_c, i, opts);
  const double shell_term = bulk_term(shell, i, opts.zero_tol);
  const double term_cprime = detail::boundary_sum(boundary_cprime, i, opts);
  return term_c - shell_term - term_cprime;
}

}  // namespace morse
