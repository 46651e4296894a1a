#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "morse/hermitian.hpp"

namespace morse {

// Real polynomial in t, coefficients[j] multiplying t^j.
class Polynomial {
 public:
  Polynomial() : coeffs_{0.0} {}
  explicit Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.push_back(0.0);
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<double>& coefficients() const { return coeffs_; }

  double operator()(double t) const {
    double acc = 0.0;
    for (std::size_t j = coeffs_.size(); j-- > 0;) acc = acc * t + coeffs_[j];
    return acc;
  }

  // Exact integral of the coefficient representation over [lo, hi].
  double definite_integral(double lo, double hi) const {
    double acc_hi = 0.0;
    double acc_lo = 0.0;
    for (std::size_t j = coeffs_.size(); j-- > 0;) {
      const double c = coeffs_[j] / static_cast<double>(j + 1);
      acc_hi = acc_hi * hi + c;
      acc_lo = acc_lo * lo + c;
    }
    return acc_hi * hi - acc_lo * lo;
  }

 private:
  std::vector<double> coeffs_;
};

// Coefficients of p(t) = det(A + tB): det is evaluated at m+1 Chebyshev
// nodes and the interpolation system is solved directly. Exact up to
// conditioning for the small dims used here; node_halfwidth should cover the
// t-range of interest (conditioning of the Vandermonde solve is best when
// evaluation points fall inside [-halfwidth, halfwidth]).
inline Polynomial det_polynomial(const HermitianMatrix& A,
                                 const HermitianMatrix& B,
                                 double node_halfwidth = 1.0) {
  if (A.dim() != B.dim())
    throw DimensionMismatch("det_polynomial: pencil dims differ");
  const int m = A.dim();
  const int nodes = m + 1;
  const double h = node_halfwidth > 0.0 ? node_halfwidth : 1.0;

  Eigen::MatrixXd vander(nodes, nodes);
  Eigen::VectorXd values(nodes);
  for (int k = 0; k < nodes; ++k) {
    const double t =
        h * std::cos(std::numbers::pi * (2.0 * k + 1.0) / (2.0 * nodes));
    double power = 1.0;
    for (int j = 0; j < nodes; ++j) {
      vander(k, j) = power;
      power *= t;
    }
    values(k) = (A.matrix() + t * B.matrix()).determinant().real();
  }
  Eigen::VectorXd coeffs = vander.colPivHouseholderQr().solve(values);
  return Polynomial(
      std::vector<double>(coeffs.data(), coeffs.data() + nodes));
}

}  // namespace morse
