#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "morse/errors.hpp"
#include "morse/quadrature.hpp"
#include "morse/summation.hpp"

namespace morse {

// Normal-metric profile a(rho) on rho <= 0 and the data needed to integrate
// against a(rho)^{-1}. The default is a(rho) = (1 - rho)^2; user profiles
// are piecewise linear on a finite grid ending at 0 and are treated as +inf
// (i.e. a^{-1} = 0) left of the grid.
class ProfileFunction {
 public:
  enum class Kind { inverse_square_default, user_tabulated };

  static ProfileFunction inverse_square_default() {
    return ProfileFunction(Kind::inverse_square_default, {}, {});
  }

  static ProfileFunction tabulated(std::vector<double> rho,
                                   std::vector<double> values) {
    if (rho.size() != values.size() || rho.size() < 2)
      throw std::invalid_argument(
          "tabulated profile needs matching grids with >= 2 points");
    for (std::size_t i = 0; i + 1 < rho.size(); ++i)
      if (!(rho[i] < rho[i + 1]))
        throw std::invalid_argument("tabulated profile grid must ascend");
    if (rho.back() != 0.0)
      throw std::invalid_argument("tabulated profile grid must end at 0");
    for (double v : values)
      if (!(v > 0.0))
        throw std::invalid_argument("tabulated profile values must be > 0");
    return ProfileFunction(Kind::user_tabulated, std::move(rho),
                           std::move(values));
  }

  Kind kind() const { return kind_; }

  double a(double s) const {
    if (kind_ == Kind::inverse_square_default) {
      const double u = 1.0 - s;
      return u * u;
    }
    if (s < rho_.front() || s > 0.0)
      return std::numeric_limits<double>::infinity();
    return interpolate(s);
  }

  // 1/a, with the convention that it vanishes outside the profile domain.
  double a_inv(double s) const {
    if (kind_ == Kind::inverse_square_default) {
      const double u = 1.0 - s;
      return 1.0 / (u * u);
    }
    if (s < rho_.front() || s > 0.0) return 0.0;
    return 1.0 / interpolate(s);
  }

  // Leftmost point where a^{-1} can be nonzero; -inf for the default.
  double domain_min() const {
    return kind_ == Kind::inverse_square_default
               ? -std::numeric_limits<double>::infinity()
               : rho_.front();
  }

  // Upper bound for the mass of a^{-1} on (-inf, S]. For the default this
  // is the exact antiderivative value 1/(1-S); used to truncate tails.
  double tail_mass(double S) const {
    if (kind_ == Kind::inverse_square_default) return 1.0 / (1.0 - S);
    if (S <= rho_.front()) return 0.0;
    double mass = 0.0;
    for (std::size_t i = 0; i + 1 < rho_.size(); ++i) {
      const double lo = rho_[i];
      const double hi = std::min(rho_[i + 1], S);
      if (hi <= lo) break;
      const double inv_max = 1.0 / std::min(values_[i], values_[i + 1]);
      mass += (hi - lo) * inv_max;
    }
    return mass;
  }

  // Interior panel boundaries for integrals against a^{-1} (the kinks of a
  // piecewise-linear profile); empty for the smooth default.
  const std::vector<double>& grid() const { return rho_; }

 private:
  ProfileFunction(Kind kind, std::vector<double> rho,
                  std::vector<double> values)
      : kind_(kind),
        rho_(std::move(rho)),
        values_(std::move(values)),
        cache_(std::make_shared<Cache>()) {}

  double interpolate(double s) const {
    const auto it = std::upper_bound(rho_.begin(), rho_.end(), s);
    const std::size_t hi =
        std::min(rho_.size() - 1,
                 static_cast<std::size_t>(std::max<std::ptrdiff_t>(
                     1, it - rho_.begin())));
    const std::size_t lo = hi - 1;
    const double f = (s - rho_[lo]) / (rho_[hi] - rho_[lo]);
    return values_[lo] + f * (values_[hi] - values_[lo]);
  }

  Kind kind_;
  std::vector<double> rho_;
  std::vector<double> values_;

  // b(t) memo shared by copies of the profile; keyed by t, storing the
  // tolerance the value was computed at. Mutex-guarded (single writer).
  struct Cache {
    std::mutex mutex;
    std::map<double, std::pair<double, double>> values;  // t -> (tol, b)
  };
  std::shared_ptr<Cache> cache_;

  friend double profile_b(double, const ProfileFunction&, double);
};

// b(t) = integral of e^{s t} a(s)^{-1} ds over s in (-inf, 0], t >= 0.
// The tail left of a cutoff S is bounded by e^{S t} * tail_mass(S) (since
// e^{s t} <= e^{S t} for s <= S <= 0); S is pushed left until that bound is
// below a quarter of the requested relative tolerance. The remaining range
// is covered by geometrically growing panels integrated left to right.
inline double profile_b(double t, const ProfileFunction& profile,
                        double rel_tol = 1e-9) {
  if (!(t >= 0.0)) throw std::invalid_argument("profile_b requires t >= 0");
  if (!(rel_tol > 0.0)) rel_tol = 1e-9;

  {
    std::lock_guard<std::mutex> lock(profile.cache_->mutex);
    const auto it = profile.cache_->values.find(t);
    if (it != profile.cache_->values.end() && it->second.first <= rel_tol)
      return it->second.second;
  }

  // Panel boundaries, rightmost first: 0, then -1, -2, -4, ... past the
  // cutoff (default profile), or the tabulated grid kinks.
  std::vector<double> cuts{0.0};
  if (profile.kind() == ProfileFunction::Kind::user_tabulated) {
    for (auto it = profile.grid().rbegin(); it != profile.grid().rend(); ++it)
      if (*it < 0.0) cuts.push_back(*it);
  } else {
    QuadratureControl rough_ctl;
    rough_ctl.rel_tol = 1e-3;
    auto integrand_rough = [&](double s) {
      return std::exp(s * t) * profile.a_inv(s);
    };
    const double rough = std::max(
        adaptive_integrate(integrand_rough, -1.0, 0.0, rough_ctl), 1e-300);
    double S = -1.0;
    while (std::exp(S * t) * profile.tail_mass(S) > 0.25 * rel_tol * rough &&
           S > -1e15)
      S *= 2.0;
    for (double edge = -1.0; edge > S; edge *= 2.0) cuts.push_back(edge);
    cuts.push_back(S * 2.0 > -1.0 ? -1.0 : S);
  }

  auto integrand = [&](double s) { return std::exp(s * t) * profile.a_inv(s); };
  QuadratureControl ctl;
  ctl.rel_tol = 0.25 * rel_tol;
  StableSum sum;
  for (std::size_t i = cuts.size(); i-- > 1;)
    sum.add(adaptive_integrate(integrand, cuts[i], cuts[i - 1], ctl));
  const double value = sum.get();

  {
    std::lock_guard<std::mutex> lock(profile.cache_->mutex);
    auto& slot = profile.cache_->values[t];
    if (slot.second == 0.0 || slot.first > rel_tol)
      slot = {rel_tol, value};
  }
  return value;
}

}  // namespace morse
