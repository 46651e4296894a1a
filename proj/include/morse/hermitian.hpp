#pragma once

#include <Eigen/Dense>
#include <complex>
#include <sstream>
#include <utility>
#include <vector>

#include "morse/errors.hpp"

namespace morse {

using Complex = std::complex<double>;

// Eigenvalue sign counts of a Hermitian form.
struct Inertia {
  int negatives = 0;
  int zeros = 0;
  int positives = 0;

  friend bool operator==(const Inertia&, const Inertia&) = default;
};

// Hermitian form in an orthonormal frame. Construction checks conjugate
// symmetry entrywise to 1e-12 (scaled by the largest entry) and then stores
// the exactly Hermitian average (M + M*)/2, so downstream solvers may assume
// exact symmetry.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const Eigen::MatrixXcd& m) {
    if (m.rows() < 1 || m.rows() != m.cols())
      throw DimensionMismatch("Hermitian matrix must be square with dim >= 1");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j <= i; ++j) {
        if (std::abs(m(i, j) - std::conj(m(j, i))) > 1e-12 * scale) {
          std::ostringstream msg;
          msg << "entry (" << i << "," << j << ") is not the conjugate of ("
              << j << "," << i << ")";
          throw NonHermitian(msg.str(), static_cast<int>(i),
                             static_cast<int>(j));
        }
      }
    }
    m_ = 0.5 * (m + m.adjoint());
  }

  static HermitianMatrix diagonal(const std::vector<double>& entries) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(
        static_cast<Eigen::Index>(entries.size()),
        static_cast<Eigen::Index>(entries.size()));
    for (std::size_t i = 0; i < entries.size(); ++i)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) =
          entries[i];
    return HermitianMatrix(m);
  }

  static HermitianMatrix identity(int dim) {
    return HermitianMatrix(Eigen::MatrixXcd::Identity(dim, dim));
  }

  int dim() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return m_; }
  Complex entry(int i, int j) const { return m_(i, j); }

  // Ascending, from the Hermitian eigensolver.
  std::vector<double> eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        m_, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + ev.size());
  }

  // Real for Hermitian input; the imaginary part of the LU determinant is
  // rounding noise and is dropped.
  double determinant() const { return m_.determinant().real(); }

  double max_abs_entry() const { return m_.cwiseAbs().maxCoeff(); }

  // Infinity norm, an upper bound on the spectral radius.
  double spectral_radius_bound() const {
    return m_.cwiseAbs().rowwise().sum().maxCoeff();
  }

 private:
  Eigen::MatrixXcd m_;
};

// zero_tol <= 0 selects the default 1e-10 * (1 + spectral radius bound).
inline double resolve_zero_tol(const HermitianMatrix& h, double zero_tol) {
  if (zero_tol > 0.0) return zero_tol;
  return 1e-10 * (1.0 + h.spectral_radius_bound());
}

inline Inertia inertia(const HermitianMatrix& h, double zero_tol = 0.0) {
  const double tol = resolve_zero_tol(h, zero_tol);
  Inertia out;
  for (double ev : h.eigenvalues()) {
    if (ev < -tol)
      ++out.negatives;
    else if (ev > tol)
      ++out.positives;
    else
      ++out.zeros;
  }
  return out;
}

}  // namespace morse
