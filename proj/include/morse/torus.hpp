#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "morse/errors.hpp"
#include "morse/hermitian.hpp"
#include "morse/integrals.hpp"
#include "morse/pencil.hpp"
#include "morse/scene.hpp"

namespace morse {

// Integer eigenvalue data of the disc-bundle-over-torus family: lambda are
// the curvature eigenvalues of the pulled-back bundle, mu the fiber/Levi
// eigenvalues. All entries must be nonzero.
struct TorusBundleSpec {
  std::vector<long long> lambda;
  std::vector<long long> mu;
};

inline void validate_spec(const TorusBundleSpec& spec) {
  if (spec.lambda.empty() || spec.lambda.size() != spec.mu.size())
    throw DimensionMismatch(
        "torus spec: lambda and mu need equal nonzero lengths");
  for (long long v : spec.lambda)
    if (v == 0)
      throw DegenerateEigenvalue("torus spec: lambda entry is zero");
  for (long long v : spec.mu)
    if (v == 0) throw DegenerateEigenvalue("torus spec: mu entry is zero");
}

struct JSet {
  std::vector<long long> members;             // sorted, j >= 0
  std::vector<long long> degenerate_skipped;  // j with some lambda_i + j mu_i = 0
};

namespace detail {

inline int negative_count(const std::vector<long long>& v) {
  int c = 0;
  for (long long x : v)
    if (x < 0) ++c;
  return c;
}

inline long long checked_product_abs(const std::vector<long long>& v) {
  __int128 p = 1;
  for (long long x : v) {
    p *= x < 0 ? -static_cast<__int128>(x) : static_cast<__int128>(x);
    if (p > static_cast<__int128>(INT64_MAX))
      throw std::overflow_error("torus dimension product overflows int64");
  }
  return static_cast<long long>(p);
}

}  // namespace detail

// Compact-torus cohomology dimension: the absolute eigenvalue product if
// exactly q eigenvalues are negative, else 0.
inline long long torus_dim(const std::vector<long long>& lambda, int q) {
  for (long long v : lambda)
    if (v == 0)
      throw DegenerateEigenvalue("torus eigenvalue vector has a zero entry");
  if (detail::negative_count(lambda) != q) return 0;
  return detail::checked_product_abs(lambda);
}

// J(q): all j >= 0 for which lambda + j*mu has exactly q negative entries.
// Finite iff mu itself does not have exactly q negatives (beyond
// max_i ceil(|lambda_i|/|mu_i|) every entry carries the sign of mu).
// j values hitting a zero entry are excluded and reported.
inline JSet j_set(const TorusBundleSpec& spec, int q) {
  validate_spec(spec);
  if (detail::negative_count(spec.mu) == q)
    throw UnboundedJSet("J(" + std::to_string(q) +
                        ") is infinite: index of mu equals the grade");

  long long j_max = 0;
  for (std::size_t i = 0; i < spec.lambda.size(); ++i) {
    const long long la =
        spec.lambda[i] < 0 ? -spec.lambda[i] : spec.lambda[i];
    const long long mu = spec.mu[i] < 0 ? -spec.mu[i] : spec.mu[i];
    const long long cross = (la + mu - 1) / mu;  // ceil(|lambda_i| / |mu_i|)
    if (cross > j_max) j_max = cross;
  }
  ++j_max;

  JSet out;
  std::vector<long long> entries(spec.lambda.size());
  for (long long j = 0; j <= j_max; ++j) {
    bool degenerate = false;
    for (std::size_t i = 0; i < spec.lambda.size(); ++i) {
      const __int128 e =
          spec.lambda[i] + static_cast<__int128>(j) * spec.mu[i];
      if (e > INT64_MAX || e < INT64_MIN)
        throw std::overflow_error("torus pencil entry overflows int64");
      entries[i] = static_cast<long long>(e);
      if (entries[i] == 0) degenerate = true;
    }
    if (degenerate) {
      out.degenerate_skipped.push_back(j);
      continue;
    }
    if (detail::negative_count(entries) == q) out.members.push_back(j);
  }
  return out;
}

// Dimension of the grade-q cohomology of the k-th power on the disc bundle:
// sum over j in J(q) of the scaled spec of the absolute entry products.
inline long long disc_bundle_dim(const TorusBundleSpec& spec, int q,
                                 long long k) {
  validate_spec(spec);
  if (k < 1) throw std::invalid_argument("disc_bundle_dim requires k >= 1");

  TorusBundleSpec scaled = spec;
  for (long long& v : scaled.lambda) {
    const __int128 s = static_cast<__int128>(v) * k;
    if (s > INT64_MAX || s < INT64_MIN)
      throw std::overflow_error("scaled torus spec overflows int64");
    v = static_cast<long long>(s);
  }

  const JSet js = j_set(scaled, q);
  __int128 total = 0;
  std::vector<long long> entries(spec.lambda.size());
  for (long long j : js.members) {
    for (std::size_t i = 0; i < scaled.lambda.size(); ++i)
      entries[i] = scaled.lambda[i] + j * scaled.mu[i];
    total += detail::checked_product_abs(entries);
    if (total > static_cast<__int128>(INT64_MAX))
      throw std::overflow_error("disc bundle dimension overflows int64");
  }
  return static_cast<long long>(total);
}

struct ConvergenceRow {
  long long k = 0;
  long long dim = 0;
  double scaled_dim = 0.0;  // k^{-n} * dim
  double limit = 0.0;       // exact boundary term at (diag lambda, diag mu)
  double abs_error = 0.0;
};

namespace detail {

inline HermitianMatrix diag_of(const std::vector<long long>& v) {
  std::vector<double> d(v.begin(), v.end());
  return HermitianMatrix::diagonal(d);
}

}  // namespace detail

// Riemann-limit table: k^{-n} * disc_bundle_dim against the exact boundary
// integral. Finiteness of J(q) and boundedness of T(q) are two readings of
// the same criterion and are asserted to coincide.
inline std::vector<ConvergenceRow> convergence_table(
    const TorusBundleSpec& spec, int q, const std::vector<long long>& k_list,
    const PencilOptions& opts = {}) {
  validate_spec(spec);
  const int n = static_cast<int>(spec.lambda.size()) + 1;
  const HermitianMatrix a = detail::diag_of(spec.lambda);
  const HermitianMatrix b = detail::diag_of(spec.mu);

  const bool region_unbounded = t_region(a, b, q, opts).unbounded();
  const bool jset_unbounded = detail::negative_count(spec.mu) == q;
  if (region_unbounded != jset_unbounded)
    throw std::logic_error(
        "torus: J(q) finiteness disagrees with T(q) boundedness");
  if (jset_unbounded)
    throw UnboundedJSet("J(" + std::to_string(q) +
                        ") is infinite: index of mu equals the grade");

  const double limit = boundary_term_point(a, b, q, opts);
  std::vector<ConvergenceRow> rows;
  rows.reserve(k_list.size());
  for (long long k : k_list) {
    ConvergenceRow row;
    row.k = k;
    row.dim = disc_bundle_dim(spec, q, k);
    row.scaled_dim =
        static_cast<double>(row.dim) / std::pow(static_cast<double>(k), n);
    row.limit = limit;
    row.abs_error = std::abs(row.scaled_dim - limit);
    rows.push_back(row);
  }
  return rows;
}

// Bridge to the sampled-scene machinery: the disc bundle is flat in the
// fiber direction, so the bulk term vanishes and one unit-weight boundary
// sample with diagonal data carries the whole bound (chern units).
inline Scene scene_from_spec(const TorusBundleSpec& spec) {
  validate_spec(spec);
  Scene scene;
  scene.n = static_cast<int>(spec.lambda.size()) + 1;
  scene.units = Units::chern;
  scene.boundary.push_back(
      {1.0, detail::diag_of(spec.lambda), detail::diag_of(spec.mu)});
  return scene;
}

}  // namespace morse
