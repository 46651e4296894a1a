#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "morse/bergman.hpp"
#include "morse/hermitian.hpp"
#include "morse/integrals.hpp"
#include "morse/pencil.hpp"
#include "morse/profile.hpp"
#include "morse/report.hpp"
#include "morse/scene.hpp"
#include "morse/torus.hpp"

namespace morse::selfcheck {

// mt19937_64 with hand-rolled uniform/normal transforms: the engine sequence
// is pinned by the standard, and avoiding std distributions keeps streams
// identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform01() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
  }

  long long integer(long long lo, long long hi) {
    return lo + static_cast<long long>(eng_() %
                                       static_cast<std::uint64_t>(hi - lo + 1));
  }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform01();
    } while (u1 <= 0.0);
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(angle);
    has_spare_ = true;
    return r * std::cos(angle);
  }

 private:
  std::mt19937_64 eng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

inline HermitianMatrix random_hermitian(Rng& rng, int dim,
                                        double scale = 1.0) {
  Eigen::MatrixXcd g(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c)
      g(r, c) = Complex(scale * rng.normal(), scale * rng.normal());
  return HermitianMatrix(0.5 * (g + g.adjoint()).eval());
}

namespace detail {

inline HermitianMatrix with_pushed_eigenvalues(const HermitianMatrix& h,
                                               double floor_abs,
                                               bool force_positive) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.matrix());
  Eigen::VectorXd d = solver.eigenvalues();
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (force_positive)
      d(i) = std::abs(d(i)) + floor_abs;
    else
      d(i) = d(i) < 0.0 ? d(i) - floor_abs : d(i) + floor_abs;
  }
  const Eigen::MatrixXcd rebuilt = solver.eigenvectors() *
                                   d.asDiagonal() *
                                   solver.eigenvectors().adjoint();
  return HermitianMatrix(rebuilt);
}

}  // namespace detail

// Random Hermitian matrix with every |eigenvalue| >= min_abs.
inline HermitianMatrix random_nondegenerate(Rng& rng, int dim,
                                            double min_abs = 0.05,
                                            double scale = 1.0) {
  return detail::with_pushed_eigenvalues(random_hermitian(rng, dim, scale),
                                         min_abs, false);
}

// Random positive definite matrix with every eigenvalue >= min_eig.
inline HermitianMatrix random_posdef(Rng& rng, int dim, double min_eig = 0.3,
                                     double scale = 1.0) {
  return detail::with_pushed_eigenvalues(random_hermitian(rng, dim, scale),
                                         min_eig, true);
}

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

inline bool all_passed(const std::vector<CheckResult>& results) {
  for (const CheckResult& r : results)
    if (!r.pass) return false;
  return true;
}

namespace detail {

inline CheckResult make_result(const std::string& name, bool pass,
                               const std::string& detail) {
  return {name, pass, detail};
}

inline std::vector<CheckResult> suite_holefill() {
  std::vector<CheckResult> out;
  Rng rng(20260814);
  double worst_residual = 0.0;
  double worst_point = 0.0;
  bool pass = true;
  for (int it = 0; it < 100; ++it) {
    const int m = 1 + it % 3;
    Scene scene;
    scene.n = m + 1;
    for (int s = 0; s < 2; ++s)
      scene.bulk.push_back(
          {rng.uniform(0.0, 2.0), random_posdef(rng, scene.n)});
    for (int s = 0; s < 3; ++s) {
      const HermitianMatrix a = random_posdef(rng, m);
      scene.boundary.push_back(
          {rng.uniform(0.0, 2.0), a, HermitianMatrix(-a.matrix())});
    }
    const HolefillResult r = holefill_check(scene);
    const double rel =
        std::abs(r.residual) / std::max(1.0, std::abs(r.vol_bundle));
    worst_residual = std::max(worst_residual, rel);
    if (rel > 1e-10) pass = false;
    for (const BoundarySample& s : scene.boundary) {
      const double term = boundary_term_point(s.theta_tan, s.levi, 0);
      const double expected = s.theta_tan.determinant() / scene.n;
      const double gap = std::abs(term - expected) / std::abs(expected);
      worst_point = std::max(worst_point, gap);
      if (gap > 1e-12) pass = false;
    }
  }
  std::ostringstream detail;
  detail << "max relative residual " << format_sig17(worst_residual)
         << ", max det/n gap " << format_sig17(worst_point)
         << " over 100 conformal scenes";
  out.push_back(make_result("holefill-identity", pass, detail.str()));
  return out;
}

inline std::vector<CheckResult> suite_fubini() {
  std::vector<CheckResult> out;
  struct Case {
    std::string name;
    ModelBoundaryData data;
  };
  const Eigen::MatrixXcd a2 =
      (Eigen::MatrixXcd(2, 2) << Complex(2.0, 0.0), Complex(0.5, 0.25),
       Complex(0.5, -0.25), Complex(3.0, 0.0))
          .finished();
  const Eigen::MatrixXcd b2 =
      (Eigen::MatrixXcd(2, 2) << Complex(-1.0, 0.0), Complex(0.0, 0.1),
       Complex(0.0, -0.1), Complex(-2.0, 0.0))
          .finished();
  std::vector<Case> cases;
  cases.push_back({"diag-(3)-(-2)-q0",
                   ModelBoundaryData(HermitianMatrix::diagonal({3.0}),
                                     HermitianMatrix::diagonal({-2.0}), 0)});
  cases.push_back({"diag-(1,2)-(-1,-1)-q1",
                   ModelBoundaryData(HermitianMatrix::diagonal({1.0, 2.0}),
                                     HermitianMatrix::diagonal({-1.0, -1.0}),
                                     1)});
  cases.push_back({"complex-2x2-q0",
                   ModelBoundaryData(HermitianMatrix(a2), HermitianMatrix(b2),
                                     0)});
  cases.push_back({"complex-2x2-q1",
                   ModelBoundaryData(HermitianMatrix(a2), HermitianMatrix(b2),
                                     1)});
  cases.push_back(
      {"tabulated-constant-profile",
       ModelBoundaryData(
           HermitianMatrix::diagonal({3.0}),
           HermitianMatrix::diagonal({-2.0}), 0,
           ProfileFunction::tabulated({-30.0, 0.0}, {1.0, 1.0}))});

  for (const Case& c : cases) {
    const double term = boundary_term_point(c.data.phi0(), c.data.rho0_levi(),
                                            c.data.q());
    const double residual = fiber_integral_residual(c.data, 1e-6);
    const bool pass = std::abs(residual) <= 1e-6 * std::max(term, 1e-12);
    std::ostringstream detail;
    detail << "residual " << format_sig17(residual) << " against term "
           << format_sig17(term);
    out.push_back(make_result("fubini-" + c.name, pass, detail.str()));
  }
  return out;
}

inline std::vector<CheckResult> suite_zq() {
  Rng rng(48151623);
  bool pass = true;
  long checked = 0;
  std::string failure;
  for (int it = 0; it < 1000 && pass; ++it) {
    const int m = 1 + it % 4;
    const int n = m + 1;
    const HermitianMatrix levi = random_nondegenerate(rng, m);
    const HermitianMatrix a = random_hermitian(rng, m);
    const int negatives = inertia(levi).negatives;
    for (int q = 0; q <= n; ++q) {
      const bool z = condition_Z(levi, n, q);
      const bool index_match = negatives == q;
      const bool region_unbounded = t_region(a, levi, q).unbounded();
      ++checked;
      if (z != !index_match || region_unbounded != index_match) {
        pass = false;
        std::ostringstream msg;
        msg << "mismatch at iteration " << it << ", q=" << q;
        failure = msg.str();
        break;
      }
    }
  }
  std::ostringstream detail;
  detail << checked << " (levi, q) pairs";
  if (!failure.empty()) detail << ": " << failure;
  return {make_result("zq-boundedness-equivalence", pass, detail.str())};
}

inline std::vector<CheckResult> suite_convergence() {
  std::vector<CheckResult> out;
  const std::vector<long long> ks{10, 50, 100, 200};

  {
    const TorusBundleSpec spec{{3}, {-2}};
    bool pass = true;
    double worst = 0.0;
    for (const ConvergenceRow& row : convergence_table(spec, 0, ks)) {
      worst = std::max(worst, row.abs_error * static_cast<double>(row.k));
      if (row.abs_error > 2.0 / static_cast<double>(row.k)) pass = false;
    }
    out.push_back(make_result(
        "convergence-(3)-(-2)-q0", pass,
        "max k*error " + format_sig17(worst) + " (bound 2)"));
  }
  {
    const TorusBundleSpec spec{{2, 3}, {-1, -1}};
    bool pass = true;
    double worst = 0.0;
    for (const ConvergenceRow& row : convergence_table(spec, 1, ks)) {
      worst = std::max(worst, row.abs_error * static_cast<double>(row.k));
      if (row.abs_error > 2.0 / static_cast<double>(row.k)) pass = false;
    }
    out.push_back(make_result(
        "convergence-(2,3)-(-1,-1)-q1", pass,
        "max k*error " + format_sig17(worst) + " (bound 2)"));
  }
  {
    const TorusBundleSpec spec{{2, 2}, {-1, -1}};
    bool pass = true;
    for (const ConvergenceRow& row : convergence_table(spec, 1, ks)) {
      if (row.dim != 0 || row.limit != 0.0) pass = false;
    }
    out.push_back(make_result("convergence-parallel-(2,2)-(-1,-1)-q1", pass,
                              "grade-1 dimensions vanish identically"));
  }
  return out;
}

}  // namespace detail

// Built-in validation suites exposed through the CLI `check` subcommand:
//   holefill    - conformal volume identity on random scenes
//   fubini      - fiber-integral identity of the model density
//   zq          - condition Z(q) vs region boundedness equivalence
//   convergence - Riemann limits of the disc-bundle dimensions
inline std::vector<CheckResult> run_suite(const std::string& name) {
  if (name == "holefill") return detail::suite_holefill();
  if (name == "fubini") return detail::suite_fubini();
  if (name == "zq") return detail::suite_zq();
  if (name == "convergence") return detail::suite_convergence();
  throw std::invalid_argument("unknown check suite: " + name);
}

}  // namespace morse::selfcheck
