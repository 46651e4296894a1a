#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "morse/errors.hpp"
#include "morse/hermitian.hpp"

namespace morse {

struct PencilOptions {
  // <= 0 selects the per-matrix default inside resolve_zero_tol.
  double zero_tol = 0.0;
  // Generalized eigenvalues with |Im| > imag_tol * (1 + |Re|) are discarded.
  double imag_tol = 1e-8;
  // Breakpoints closer than this relative gap collapse to their mean.
  double merge_rel_gap = 1e-9;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  friend bool operator==(const Interval&, const Interval&) = default;
};

// Finite union of disjoint open intervals in (0, inf). When unbounded, the
// last interval carries hi = +inf.
class TRegion {
 public:
  TRegion() = default;
  TRegion(std::vector<Interval> intervals, bool unbounded)
      : intervals_(std::move(intervals)), unbounded_(unbounded) {}

  const std::vector<Interval>& intervals() const { return intervals_; }
  bool unbounded() const { return unbounded_; }
  bool empty() const { return intervals_.empty(); }

  bool contains(double t) const {
    for (const Interval& iv : intervals_)
      if (iv.lo < t && t < iv.hi) return true;
    return false;
  }

  // Sum of interval lengths; +inf when unbounded.
  double measure() const {
    if (unbounded_) return std::numeric_limits<double>::infinity();
    double total = 0.0;
    for (const Interval& iv : intervals_) total += iv.hi - iv.lo;
    return total;
  }

 private:
  std::vector<Interval> intervals_;
  bool unbounded_ = false;
};

// All t > 0 with det(A + tB) = 0, as negated eigenvalues of B^{-1}A.
// Near-real eigenvalues only; near-duplicates merged to their mean.
inline std::vector<double> pencil_breakpoints(const HermitianMatrix& A,
                                              const HermitianMatrix& B,
                                              const PencilOptions& opts = {}) {
  if (A.dim() != B.dim())
    throw DimensionMismatch("pencil_breakpoints: pencil dims differ");

  const double b_tol = resolve_zero_tol(B, opts.zero_tol);
  const std::vector<double> b_eigs = B.eigenvalues();
  for (double ev : b_eigs)
    if (std::abs(ev) <= b_tol)
      throw DegenerateLevi("pencil matrix B is numerically singular");

  const Eigen::MatrixXcd m = B.matrix().fullPivLu().solve(A.matrix());
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
  if (solver.info() != Eigen::Success)
    throw DegenerateLevi("eigen decomposition of B^{-1}A failed");

  std::vector<double> roots;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const Complex nu = solver.eigenvalues()(i);
    if (std::abs(nu.imag()) > opts.imag_tol * (1.0 + std::abs(nu.real())))
      continue;
    const double t = -nu.real();
    if (t > 0.0) roots.push_back(t);
  }
  std::sort(roots.begin(), roots.end());

  std::vector<double> merged;
  std::size_t i = 0;
  while (i < roots.size()) {
    std::size_t j = i + 1;
    double cluster_sum = roots[i];
    while (j < roots.size() &&
           roots[j] - roots[j - 1] <= opts.merge_rel_gap * roots[j]) {
      cluster_sum += roots[j];
      ++j;
    }
    merged.push_back(cluster_sum / static_cast<double>(j - i));
    i = j;
  }
  return merged;
}

namespace detail {

// Index of A + tB at t, retrying at perturbed points inside (lo, hi) when the
// evaluation lands on a degenerate pencil value. hi may be +inf.
inline int segment_index(const HermitianMatrix& A, const HermitianMatrix& B,
                         double lo, double hi, const PencilOptions& opts) {
  constexpr double kFractions[] = {0.5, 0.381966011250105, 0.618033988749895,
                                   0.276393202250021, 0.723606797749979};
  const bool ray = !std::isfinite(hi);
  for (double f : kFractions) {
    const double t = ray ? lo + 0.5 + f : lo + f * (hi - lo);
    const HermitianMatrix at(A.matrix() + t * B.matrix());
    const Inertia in = inertia(at, opts.zero_tol);
    if (in.zeros == 0) return in.negatives;
  }
  throw DegenerateEigenvalue(
      "pencil index could not be classified on a segment");
}

}  // namespace detail

// T(q) = { t > 0 : A + tB has exactly q negative eigenvalues }, assembled by
// classifying each segment between consecutive breakpoints at an interior
// point. Adjacent qualifying segments merge across their common breakpoint
// (a single point does not affect integration). Unbounded iff the final ray
// qualifies, which happens exactly when inertia(B).negatives == q.
inline TRegion t_region(const HermitianMatrix& A, const HermitianMatrix& B,
                        int q, const PencilOptions& opts = {}) {
  const std::vector<double> bps = pencil_breakpoints(A, B, opts);
  const double inf = std::numeric_limits<double>::infinity();

  std::vector<Interval> kept;
  bool unbounded = false;
  double lo = 0.0;
  for (std::size_t s = 0; s <= bps.size(); ++s) {
    const bool ray = s == bps.size();
    const double hi = ray ? inf : bps[s];
    if (detail::segment_index(A, B, lo, hi, opts) == q) {
      if (!kept.empty() && kept.back().hi == lo)
        kept.back().hi = hi;
      else
        kept.push_back({lo, hi});
      if (ray) unbounded = true;
    }
    lo = hi;
  }
  return TRegion(std::move(kept), unbounded);
}

// True iff the Levi form has >= q+1 negative or >= n-q positive eigenvalues;
// equivalent to T(q) being bounded when the form is nondegenerate.
inline bool condition_Z(const HermitianMatrix& levi, int n, int q,
                        double zero_tol = 0.0) {
  if (levi.dim() != n - 1)
    throw DimensionMismatch("condition_Z: levi dim must equal n - 1");
  const Inertia in = inertia(levi, zero_tol);
  return in.negatives >= q + 1 || in.positives >= n - q;
}

}  // namespace morse
