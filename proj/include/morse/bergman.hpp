#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "morse/errors.hpp"
#include "morse/hermitian.hpp"
#include "morse/integrals.hpp"
#include "morse/pencil.hpp"
#include "morse/polynomial.hpp"
#include "morse/profile.hpp"
#include "morse/quadrature.hpp"
#include "morse/scene.hpp"
#include "morse/summation.hpp"

namespace morse {

// Model boundary domain data: quadratic curvature phi0 and Levi form of the
// model defining function, both dim n-1, with the fiber profile. Construction
// requires T(q) bounded (the model theory needs the boundedness condition at
// this grade) and precomputes the region and determinant polynomial.
class ModelBoundaryData {
 public:
  ModelBoundaryData(HermitianMatrix phi0, HermitianMatrix rho0_levi, int q,
                    ProfileFunction profile =
                        ProfileFunction::inverse_square_default(),
                    PencilOptions opts = {})
      : phi0_(std::move(phi0)),
        rho0_levi_(std::move(rho0_levi)),
        q_(q),
        profile_(std::move(profile)),
        opts_(opts),
        region_(t_region(phi0_, rho0_levi_, q_, opts_)) {
    if (q_ < 0) throw std::invalid_argument("model data: grade must be >= 0");
    if (region_.unbounded())
      throw DivergentBoundaryTerm(
          "model data: T(" + std::to_string(q_) +
          ") is unbounded (boundedness condition fails)");
    det_poly_ = det_polynomial(phi0_, rho0_levi_,
                               detail::pencil_node_halfwidth(region_));
  }

  const HermitianMatrix& phi0() const { return phi0_; }
  const HermitianMatrix& rho0_levi() const { return rho0_levi_; }
  int q() const { return q_; }
  const ProfileFunction& profile() const { return profile_; }
  const PencilOptions& options() const { return opts_; }
  const TRegion& region() const { return region_; }
  const Polynomial& det_poly() const { return det_poly_; }
  int n() const { return phi0_.dim() + 1; }

 private:
  HermitianMatrix phi0_;
  HermitianMatrix rho0_levi_;
  int q_;
  ProfileFunction profile_;
  PencilOptions opts_;
  TRegion region_;
  Polynomial det_poly_;
};

// Unit-mode prefactor of the model density: chern drops all constants so the
// fiber identity lands exactly on the boundary term; raw applies the
// displayed (1/4pi) * pi^{-(n-1)}.
inline double model_density_constant(Units units, int n) {
  if (units == Units::chern) return 1.0;
  return 1.0 / (4.0 * std::numbers::pi) *
         std::pow(std::numbers::pi, -(n - 1));
}

// Model Bergman density at boundary distance v <= 0:
//   C * integral over T(q) of (-1)^q det(phi0 + t levi) e^{v t} / b(t) dt.
// Independent of the tangential coordinate by translation invariance.
inline double model_density(const ModelBoundaryData& data, double v,
                            double rel_tol = 1e-8,
                            Units units = Units::chern) {
  if (!(v <= 0.0))
    throw std::invalid_argument("model_density requires v <= 0");
  if (data.region().empty()) return 0.0;

  const double sign = detail::grade_sign(data.q());
  const double b_tol = 0.01 * rel_tol;
  auto integrand = [&](double t) {
    return sign * data.det_poly()(t) * std::exp(v * t) /
           profile_b(t, data.profile(), b_tol);
  };
  QuadratureControl ctl;
  ctl.rel_tol = rel_tol;
  ctl.noise_rel = std::max(ctl.noise_rel, 4.0 * b_tol);
  StableSum sum;
  for (const Interval& iv : data.region().intervals())
    sum.add(adaptive_integrate(integrand, iv.lo, iv.hi, ctl));
  return model_density_constant(units, data.n()) * sum.get();
}

// Fiber integral of the model density against a(v)^{-1} minus the exact
// boundary term. Fubini with b's definition makes the true value 0, so the
// returned residual is pure quadrature error. The v-integral is truncated
// where the tail bound density(S) * tail_mass(S) (density nondecreasing in
// v) drops below the budget, then covered by geometric panels.
inline double fiber_integral_residual(const ModelBoundaryData& data,
                                      double rel_tol = 1e-6,
                                      Units units = Units::chern) {
  const double term =
      boundary_term_point(data.phi0(), data.rho0_levi(), data.q(),
                          data.options());
  const double budget = rel_tol * std::max(term, 1e-12);
  const double dens_tol = 0.02 * rel_tol;

  auto density = [&](double v) {
    return model_density(data, v, dens_tol, Units::chern);
  };

  std::vector<double> cuts{0.0};
  const double domain_min = data.profile().domain_min();
  if (std::isfinite(domain_min)) {
    for (auto it = data.profile().grid().rbegin();
         it != data.profile().grid().rend(); ++it)
      if (*it < 0.0) cuts.push_back(*it);
  } else {
    double S = -1.0;
    while (density(S) * data.profile().tail_mass(S) > 0.25 * budget &&
           S > -1e9)
      S *= 2.0;
    for (double edge = -1.0; edge > S; edge *= 2.0) cuts.push_back(edge);
    cuts.push_back(S * 2.0 > -1.0 ? -1.0 : S);
  }

  auto integrand = [&](double v) {
    return density(v) * data.profile().a_inv(v);
  };
  QuadratureControl ctl;
  ctl.rel_tol = 0.25 * rel_tol;
  ctl.abs_tol = 0.25 * budget / static_cast<double>(cuts.size());
  ctl.noise_rel = std::max(ctl.noise_rel, 4.0 * dens_tol);
  StableSum sum;
  for (std::size_t i = cuts.size(); i-- > 1;)
    sum.add(adaptive_integrate(integrand, cuts[i], cuts[i - 1], ctl));

  return model_density_constant(units, data.n()) * (sum.get() - term);
}

// Bergman density of the flat model on C^m with constant curvature theta:
// (1/pi^m) |det(theta)| on X(q), zero elsewhere. chern mode drops the
// pi^{-m} prefactor.
inline double flat_density(const HermitianMatrix& theta, int q,
                           Units units = Units::raw, double zero_tol = 0.0) {
  const Inertia in = inertia(theta, zero_tol);
  if (in.zeros > 0)
    throw DegenerateCurvature(
        "flat model curvature has a zero eigenvalue within tolerance");
  if (in.negatives != q) return 0.0;
  const int m = theta.dim();
  const double prefactor =
      units == Units::raw ? std::pow(std::numbers::pi, -m) : 1.0;
  return prefactor * std::abs(theta.determinant());
}

}  // namespace morse
