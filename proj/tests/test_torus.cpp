#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "morse/integrals.hpp"
#include "morse/selfcheck.hpp"
#include "morse/torus.hpp"

using morse::JSet;
using morse::TorusBundleSpec;

TEST_CASE("compact-torus dimensions") {
  CHECK(morse::torus_dim({3}, 0) == 3);
  CHECK(morse::torus_dim({3}, 1) == 0);
  CHECK(morse::torus_dim({3, -2}, 1) == 6);
  CHECK(morse::torus_dim({3, -2}, 0) == 0);
  CHECK(morse::torus_dim({3, -2}, 2) == 0);
  CHECK_THROWS_AS(morse::torus_dim({3, 0}, 0), morse::DegenerateEigenvalue);
  CHECK_THROWS_AS(morse::torus_dim({1 << 21, 1 << 21, 1 << 21}, 0),
                  std::overflow_error);
}

TEST_CASE("twist index sets") {
  const JSet simple = morse::j_set({{3}, {-2}}, 0);
  CHECK(simple.members == std::vector<long long>{0, 1});
  CHECK(simple.degenerate_skipped.empty());

  CHECK_THROWS_AS(morse::j_set({{3}, {-2}}, 1), morse::UnboundedJSet);

  const JSet wide = morse::j_set({{5, 4}, {-2, -3}}, 0);
  CHECK(wide.members == std::vector<long long>{0, 1});

  // j = 2 zeroes the only entry and is excluded from every grade.
  const JSet degenerate = morse::j_set({{2}, {-1}}, 0);
  CHECK(degenerate.members == std::vector<long long>{0, 1});
  CHECK(degenerate.degenerate_skipped == std::vector<long long>{2});

  CHECK_THROWS_AS(morse::j_set({{1, 2}, {1}}, 0), morse::DimensionMismatch);
  CHECK_THROWS_AS(morse::j_set({{1, 0}, {1, 1}}, 0),
                  morse::DegenerateEigenvalue);
}

TEST_CASE("singleton twist set reduces to the compact-torus count") {
  // lambda + j*mu leaves grade 1 after j = 0: J(1) = {0} exactly.
  const TorusBundleSpec spec{{-1}, {2}};
  const JSet js = morse::j_set(spec, 1);
  CHECK(js.members == std::vector<long long>{0});
  CHECK(morse::disc_bundle_dim(spec, 1, 1) == morse::torus_dim({-1}, 1));
}

TEST_CASE("disc bundle dimensions for the reference family") {
  const TorusBundleSpec spec{{3}, {-2}};
  CHECK(morse::disc_bundle_dim(spec, 0, 1) == 4);
  CHECK(morse::disc_bundle_dim(spec, 0, 2) == 12);
  CHECK(morse::disc_bundle_dim(spec, 0, 10) == 240);
  CHECK(morse::disc_bundle_dim(spec, 0, 100) == 22650);
  CHECK_THROWS_AS(morse::disc_bundle_dim(spec, 0, 0), std::invalid_argument);
}

TEST_CASE("convergence table reproduces the reference rows") {
  const TorusBundleSpec spec{{3}, {-2}};
  const auto rows = morse::convergence_table(spec, 0, {2, 10, 100});
  REQUIRE(rows.size() == 3);

  CHECK(rows[0].k == 2);
  CHECK(rows[0].dim == 12);
  CHECK_THAT(rows[0].scaled_dim, Catch::Matchers::WithinRel(3.0, 1e-14));
  CHECK_THAT(rows[0].abs_error, Catch::Matchers::WithinAbs(0.75, 1e-12));

  CHECK(rows[1].k == 10);
  CHECK_THAT(rows[1].scaled_dim, Catch::Matchers::WithinRel(2.40, 1e-14));
  CHECK_THAT(rows[1].abs_error, Catch::Matchers::WithinAbs(0.15, 1e-12));

  CHECK(rows[2].k == 100);
  CHECK_THAT(rows[2].scaled_dim, Catch::Matchers::WithinRel(2.265, 1e-14));
  CHECK_THAT(rows[2].abs_error, Catch::Matchers::WithinAbs(0.015, 1e-12));

  for (const auto& row : rows)
    CHECK_THAT(row.limit, Catch::Matchers::WithinRel(2.25, 1e-12));
}

TEST_CASE("scaled dimensions saturate the limit at rate 1/k") {
  const TorusBundleSpec spec{{3}, {-2}};
  for (long long k = 10; k <= 100; k += 10) {
    const auto rows = morse::convergence_table(spec, 0, {k});
    CHECK(rows[0].abs_error * static_cast<double>(k) <= 2.0);
    CHECK(rows[0].scaled_dim >= rows[0].limit);  // bound from above
  }
}

TEST_CASE("unbounded twist set matches the unbounded index region") {
  morse::selfcheck::Rng rng(1313);
  for (int it = 0; it < 50; ++it) {
    const int m = 1 + static_cast<int>(it % 3);
    TorusBundleSpec spec;
    for (int i = 0; i < m; ++i) {
      long long la = 0, mu = 0;
      while (la == 0) la = rng.integer(-4, 4);
      while (mu == 0) mu = rng.integer(-4, 4);
      spec.lambda.push_back(la);
      spec.mu.push_back(mu);
    }
    int neg_mu = 0;
    for (long long v : spec.mu)
      if (v < 0) ++neg_mu;

    for (int q = 0; q <= m; ++q) {
      bool jset_threw = false;
      try {
        morse::j_set(spec, q);
      } catch (const morse::UnboundedJSet&) {
        jset_threw = true;
      }
      CHECK(jset_threw == (q == neg_mu));

      std::vector<double> dl(spec.lambda.begin(), spec.lambda.end());
      std::vector<double> dm(spec.mu.begin(), spec.mu.end());
      const bool unbounded =
          t_region(morse::HermitianMatrix::diagonal(dl),
                   morse::HermitianMatrix::diagonal(dm), q)
              .unbounded();
      CHECK(unbounded == jset_threw);
    }
  }
}

TEST_CASE("two-dimensional family with distinct slopes") {
  // dims (k^3 - k)/6 exactly; the limit is the grade-1 boundary term 1/6.
  const TorusBundleSpec spec{{2, 3}, {-1, -1}};
  CHECK(morse::disc_bundle_dim(spec, 1, 10) == 165);
  const auto rows = morse::convergence_table(spec, 1, {10, 40});
  CHECK_THAT(rows[0].limit, Catch::Matchers::WithinRel(1.0 / 6.0, 1e-12));
  for (const auto& row : rows) {
    const double k = static_cast<double>(row.k);
    CHECK(row.dim == (row.k * row.k * row.k - row.k) / 6);
    CHECK_THAT(row.abs_error, Catch::Matchers::WithinAbs(1.0 / (6.0 * k * k),
                                                         1e-10));
  }
}

TEST_CASE("parallel eigenvalues collapse the middle grade") {
  const TorusBundleSpec spec{{2, 2}, {-1, -1}};
  const auto rows = morse::convergence_table(spec, 1, {10, 50});
  for (const auto& row : rows) {
    CHECK(row.dim == 0);
    CHECK(row.limit == 0.0);
    CHECK(row.abs_error == 0.0);
  }
}

TEST_CASE("scene bridge carries the torus bound") {
  const morse::Scene scene = morse::scene_from_spec({{3}, {-2}});
  CHECK(scene.n == 2);
  CHECK(scene.bulk.empty());
  REQUIRE(scene.boundary.size() == 1);
  CHECK_THAT(weak_bound(scene, 0), Catch::Matchers::WithinRel(2.25, 1e-12));

  const morse::Scene wide = morse::scene_from_spec({{5, 4}, {-2, -3}});
  CHECK(wide.n == 3);
  CHECK(wide.boundary[0].theta_tan.dim() == 2);
}
