#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "morse/hermitian.hpp"
#include "morse/selfcheck.hpp"

using morse::Complex;
using morse::HermitianMatrix;
using morse::Inertia;

namespace {

// Independent inertia oracle: dense sign-change scan of the characteristic
// polynomial p(x) = det(xI - H), evaluated by LU determinants only. Valid
// when eigenvalues are simple and separated by more than the grid step.
Inertia scan_inertia(const HermitianMatrix& h, int points = 20000) {
  const double radius = h.spectral_radius_bound() + 1.0;
  const Eigen::MatrixXcd id =
      Eigen::MatrixXcd::Identity(h.dim(), h.dim());
  auto p = [&](double x) {
    return (x * id - h.matrix()).determinant().real();
  };
  Inertia out;
  double prev_x = -radius;
  double prev_p = p(prev_x);
  for (int i = 1; i <= points; ++i) {
    const double x = -radius + 2.0 * radius * i / points;
    const double val = p(x);
    if ((prev_p < 0.0) != (val < 0.0)) {
      const double root = 0.5 * (prev_x + x);
      if (root < 0.0)
        ++out.negatives;
      else
        ++out.positives;
    }
    prev_x = x;
    prev_p = val;
  }
  out.zeros = h.dim() - out.negatives - out.positives;
  return out;
}

}  // namespace

TEST_CASE("construction validates shape and symmetry") {
  CHECK_THROWS_AS(HermitianMatrix(Eigen::MatrixXcd::Zero(2, 3)),
                  morse::DimensionMismatch);
  CHECK_THROWS_AS(HermitianMatrix(Eigen::MatrixXcd::Zero(0, 0)),
                  morse::DimensionMismatch);

  Eigen::MatrixXcd bad(2, 2);
  bad << Complex(1, 0), Complex(2, 1), Complex(2, 0.5), Complex(3, 0);
  try {
    HermitianMatrix h(bad);
    FAIL("expected NonHermitian");
  } catch (const morse::NonHermitian& e) {
    CHECK(e.row == 1);
    CHECK(e.col == 0);
  }

  // Asymmetry below the 1e-12 scaled tolerance is accepted and averaged out.
  Eigen::MatrixXcd nearly(2, 2);
  nearly << Complex(1, 0), Complex(2, 1.0 + 1e-14), Complex(2, -1.0),
      Complex(3, 0);
  const HermitianMatrix h(nearly);
  CHECK(h.entry(0, 1) == std::conj(h.entry(1, 0)));
}

TEST_CASE("diagonal and identity factories") {
  const HermitianMatrix d = HermitianMatrix::diagonal({-2.0, 3.0, -5.0});
  CHECK(d.dim() == 3);
  CHECK(d.entry(1, 1) == Complex(3.0, 0.0));
  CHECK(d.entry(0, 1) == Complex(0.0, 0.0));

  const HermitianMatrix id = HermitianMatrix::identity(2);
  CHECK(id.determinant() == 1.0);
  CHECK(id.max_abs_entry() == 1.0);
}

TEST_CASE("inertia on fixed examples") {
  CHECK(inertia(HermitianMatrix::diagonal({1.0, 1.0})) == Inertia{0, 0, 2});
  CHECK(inertia(HermitianMatrix::diagonal({-2.0, 3.0, -5.0})) ==
        Inertia{2, 0, 1});

  Eigen::MatrixXcd offdiag(2, 2);
  offdiag << Complex(0, 0), Complex(1, 0), Complex(1, 0), Complex(0, 0);
  CHECK(inertia(HermitianMatrix(offdiag)) == Inertia{1, 0, 1});
}

TEST_CASE("eigenvalues ascend and multiply to the determinant") {
  morse::selfcheck::Rng rng(101);
  for (int it = 0; it < 20; ++it) {
    const int m = 1 + it % 3;
    const HermitianMatrix h = morse::selfcheck::random_hermitian(rng, m);
    const std::vector<double> ev = h.eigenvalues();
    CHECK(std::is_sorted(ev.begin(), ev.end()));
    double prod = 1.0;
    for (double v : ev) prod *= v;
    CHECK_THAT(h.determinant(),
               Catch::Matchers::WithinRel(prod, 1e-10) ||
                   Catch::Matchers::WithinAbs(prod, 1e-12));
  }
}

TEST_CASE("inertia matches a dense characteristic-polynomial scan") {
  morse::selfcheck::Rng rng(202);
  for (int it = 0; it < 25; ++it) {
    const int m = 1 + it % 3;
    // Known spectrum with comfortable separation, random eigenbasis.
    std::vector<double> spectrum;
    for (int i = 0; i < m; ++i) {
      double v = 0.0;
      bool ok = false;
      while (!ok) {
        v = (rng.uniform01() < 0.5 ? -1.0 : 1.0) * rng.uniform(0.3, 3.0);
        ok = true;
        for (double s : spectrum)
          if (std::abs(s - v) < 0.15) ok = false;
      }
      spectrum.push_back(v);
    }
    const HermitianMatrix basis = morse::selfcheck::random_hermitian(rng, m);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(basis.matrix());
    Eigen::VectorXd d(m);
    for (int i = 0; i < m; ++i) d(i) = spectrum[i];
    const HermitianMatrix h(
        (solver.eigenvectors() * d.asDiagonal() *
         solver.eigenvectors().adjoint())
            .eval());

    int expect_neg = 0;
    for (double v : spectrum)
      if (v < 0.0) ++expect_neg;
    const Inertia in = inertia(h);
    CHECK(in.negatives == expect_neg);
    CHECK(in.zeros == 0);
    CHECK(in == scan_inertia(h));
  }
}

TEST_CASE("zero tolerance defaults scale with the matrix") {
  const HermitianMatrix h = HermitianMatrix::diagonal({1e-12, 1.0});
  CHECK(inertia(h) == Inertia{0, 1, 1});          // default tol ~ 2e-10
  CHECK(inertia(h, 1e-14) == Inertia{0, 0, 2});   // explicit override
  CHECK(morse::resolve_zero_tol(h, 0.5) == 0.5);
  CHECK(morse::resolve_zero_tol(h, 0.0) ==
        1e-10 * (1.0 + h.spectral_radius_bound()));
}
