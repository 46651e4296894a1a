#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "morse/hermitian.hpp"
#include "morse/polynomial.hpp"
#include "morse/selfcheck.hpp"

using morse::HermitianMatrix;
using morse::Polynomial;

namespace {

void check_coeffs(const Polynomial& p, const std::vector<double>& expect) {
  REQUIRE(p.coefficients().size() == expect.size());
  for (std::size_t i = 0; i < expect.size(); ++i)
    CHECK_THAT(p.coefficients()[i],
               Catch::Matchers::WithinAbs(expect[i], 1e-12));
}

}  // namespace

TEST_CASE("evaluation and integration of fixed polynomials") {
  const Polynomial p{{0.0, 2.0, 1.0}};
  CHECK(p.degree() == 2);
  CHECK(p(0.0) == 0.0);
  CHECK_THAT(p(1.5), Catch::Matchers::WithinRel(3.0 + 2.25, 1e-15));
  CHECK_THAT(p.definite_integral(0.0, 1.0),
             Catch::Matchers::WithinRel(1.0 + 1.0 / 3.0, 1e-14));
  CHECK_THAT(p.definite_integral(1.0, 2.0),
             Catch::Matchers::WithinRel(3.0 + 7.0 / 3.0, 1e-14));
}

TEST_CASE("determinant polynomial of fixed pencils") {
  check_coeffs(det_polynomial(HermitianMatrix::diagonal({3.0}),
                              HermitianMatrix::diagonal({-2.0})),
               {3.0, -2.0});
  check_coeffs(det_polynomial(HermitianMatrix::diagonal({1.0, 2.0}),
                              HermitianMatrix::diagonal({-1.0, -1.0})),
               {2.0, -3.0, 1.0});

  Eigen::MatrixXcd ones = Eigen::MatrixXcd::Ones(2, 2);
  check_coeffs(det_polynomial(HermitianMatrix(ones),
                              HermitianMatrix::identity(2)),
               {0.0, 2.0, 1.0});
}

TEST_CASE("determinant polynomial matches direct determinants") {
  morse::selfcheck::Rng rng(606);
  for (int it = 0; it < 10; ++it) {
    const int m = 1 + it % 5;
    const HermitianMatrix a = morse::selfcheck::random_hermitian(rng, m);
    const HermitianMatrix b = morse::selfcheck::random_hermitian(rng, m);
    const double halfwidth = 3.0;
    const Polynomial p = det_polynomial(a, b, halfwidth);
    CHECK(p.degree() == m);
    for (int j = 0; j < 12; ++j) {
      const double t = rng.uniform(-halfwidth, halfwidth);
      const double direct =
          (a.matrix() + t * b.matrix()).determinant().real();
      CHECK_THAT(p(t), Catch::Matchers::WithinRel(direct, 1e-9) ||
                           Catch::Matchers::WithinAbs(direct, 1e-10));
    }
  }
}

TEST_CASE("integration is antisymmetric and additive") {
  const Polynomial p{{1.0, -3.0, 0.5, 2.0}};
  const double a = -0.7, b = 1.9, c = 3.4;
  CHECK_THAT(p.definite_integral(a, b) + p.definite_integral(b, c),
             Catch::Matchers::WithinRel(p.definite_integral(a, c), 1e-12));
  CHECK_THAT(p.definite_integral(b, a),
             Catch::Matchers::WithinRel(-p.definite_integral(a, b), 1e-15));
}
