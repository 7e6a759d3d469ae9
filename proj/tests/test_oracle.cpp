#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

#include "sgspec/address.hpp"
#include "sgspec/dirichlet.hpp"
#include "sgspec/errors.hpp"
#include "sgspec/oracle.hpp"
#include "support.hpp"

using namespace sg;

namespace {

// Tangent line at x0 of c1 sin(s x) + c2 cos(s x) fitted to u(0) = f0, u(1) = f1.
Eigen::Vector2d sine_fit(double lam, double x0, double f0, double f1) {
  const double s = std::sqrt(lam);
  const double c2 = f0;
  const double c1 = (f1 - f0 * std::cos(s)) / std::sin(s);
  const double u = c1 * std::sin(s * x0) + c2 * std::cos(s * x0);
  const double du = s * (c1 * std::cos(s * x0) - c2 * std::sin(s * x0));
  return {u - du * x0, u + du * (1 - x0)};
}

}  // namespace

TEST_CASE("dirichlet laplacian") {
  const Eigen::MatrixXd l1 = dirichlet_laplacian_matrix(1);
  CHECK(l1.rows() == 3);
  CHECK(l1.diagonal() == Eigen::Vector3d(4, 4, 4));
  CHECK((l1 - l1.transpose()).norm() == 0.0);
  CHECK(dirichlet_laplacian_matrix(4).rows() == static_cast<Eigen::Index>(vertex_count_formula(4) - 3));
}

TEST_CASE("jacobi against a library solver") {
  for (int n : {2, 5, 17, 40}) {
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = sgtest::uniform(-1, 1);
    const auto jr = jacobi_eigen(a);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(a);
    CHECK(sgtest::max_diff(jr.values, ref.eigenvalues()) < 1e-12);
    CHECK(sgtest::max_diff(jr.vectors.transpose() * jr.vectors, Eigen::MatrixXd::Identity(n, n)) < 1e-12);
    CHECK(sgtest::max_diff(a * jr.vectors, jr.vectors * jr.values.asDiagonal()) < 1e-12);
  }
}

TEST_CASE("dense spectra") {
  const auto s1 = dense_dirichlet_spectrum(1);
  REQUIRE(s1.eigenvalues.size() == 3);
  CHECK(s1.eigenvalues[0] == doctest::Approx(2.0));
  CHECK(s1.eigenvalues[1] == doctest::Approx(5.0));
  CHECK(s1.eigenvalues[2] == doctest::Approx(5.0));
  const auto g = s1.grouped();
  REQUIRE(g.size() == 2);
  CHECK(g[1].second == 2);

  for (int m = 1; m <= 4; ++m) {
    const auto s = dense_dirichlet_spectrum(m);
    CHECK(s.eigenvalues.size() == vertex_count_formula(m) - 3);
    CHECK(s.max_residual < 1e-9);
    CHECK(std::is_sorted(s.eigenvalues.begin(), s.eigenvalues.end()));
  }
  CHECK_THROWS_AS(dense_dirichlet_spectrum(dense_level_cap + 1), ResourceError);
}

TEST_CASE("decimation spectrum matches the dense spectrum") {
  for (int m = 1; m <= 3; ++m) {
    const auto dense = dense_dirichlet_spectrum(m);
    const auto cmp = compare_spectra(expand_spectrum(enumerate_dirichlet_spectrum(m)), dense.eigenvalues);
    CHECK(cmp.matched);
    CHECK(cmp.size_a == cmp.size_b);
    CHECK(cmp.worst_gap < 1e-9);
  }
  CHECK_FALSE(compare_spectra({1.0, 2.0}, {1.0, 2.1}).matched);
  CHECK_FALSE(compare_spectra({1.0}, {1.0, 1.0}).matched);
}

TEST_CASE("level-2 eigenspaces contain the figure configurations") {
  const auto s2 = dense_dirichlet_spectrum(2);
  CHECK(s2.eigenspace(6.0).cols() == 3);
  CHECK(s2.eigenspace(5.0).cols() == 3);
  for (int idx = 3; idx < 6; ++idx) {
    const auto u = dirichlet_basis({DirichletSeries::six, 2, idx, {}});
    CHECK(eigenspace_distance(s2, 6.0, u.initial().values) < 1e-12);
  }
  for (int chain = 1; chain <= 3; ++chain) {
    const auto u = dirichlet_basis({DirichletSeries::five, 2, chain, {}});
    CHECK(eigenspace_distance(s2, 5.0, u.initial().values) < 1e-12);
  }
}

TEST_CASE("decimation eigenfunctions are dense eigenvectors") {
  for (int m = 2; m <= 5; ++m) {
    const auto spec = dense_dirichlet_spectrum(m);
    for (const auto& e : enumerate_dirichlet_spectrum(3)) {
      if (!e.closed_form) continue;
      for (const auto& seed : dirichlet_seeds(e.series, e.m0, e.branches)) {
        const auto u = dirichlet_basis(seed);
        if (u.m0() > m) continue;
        const auto lv = eigen_values_on_level(u, m);
        CHECK(eigenspace_distance(spec, u.sequence().at(m), lv.values, 1e-8) < 1e-9);
      }
    }
  }
}

TEST_CASE("direct tangent limit settles") {
  const auto u = six_series_piece();
  const auto w = EventuallyConstantWord::parse("01:2");
  double prev = 1e9;
  for (int m : {10, 14, 18, 22}) {
    const auto est = direct_tangent_limit(u, w, m);
    CHECK(est.error < prev);
    prev = est.error;
  }
  const auto far = direct_tangent_limit(u, w, 25);
  const auto farther = direct_tangent_limit(u, w, 40);
  CHECK(sgtest::max_diff(far.value, farther.value) < 1e-9);
}

TEST_CASE("interval tangent") {
  for (double lam : {-15.0, -1.0, 0.5, 3.0, 12.0, 30.0, 50.0}) {
    for (double x0 : {0.0, 0.13, 0.5, 0.77, 1.0}) {
      const double f0 = 0.7, f1 = -1.3;
      const Eigen::Vector2d t = interval_tangent(lam, x0, f0, f1);
      if (lam > 0) {
        CHECK(sgtest::max_diff(t, sine_fit(lam, x0, f0, f1)) < 1e-10);
      } else {
        // sinh/cosh branch against a centered finite difference of the exact solution
        const double s = std::sqrt(-lam);
        const auto u = [&](double x) { return (f0 * std::sinh(s * (1 - x)) + f1 * std::sinh(s * x)) / std::sinh(s); };
        const double h = 1e-5;
        const double du = (u(x0 + h) - u(x0 - h)) / (2 * h);
        CHECK(std::abs(t(0) - (u(x0) - du * x0)) < 1e-8);
        CHECK(std::abs(t(1) - (u(x0) + du * (1 - x0))) < 1e-8);
      }
    }
  }
  CHECK(sgtest::max_diff(interval_tangent(1.0, 0.5, 1.0, 1.0), sine_fit(1.0, 0.5, 1.0, 1.0)) < 1e-10);
  CHECK(sgtest::max_diff(interval_tangent(0.0, 0.3, 2.0, 5.0), Eigen::Vector2d(2.0, 5.0)) < 1e-15);
  CHECK(sgtest::max_diff(interval_tangent(1e-10, 0.3, 2.0, 5.0), Eigen::Vector2d(2.0, 5.0)) < 1e-8);
  const double pi = std::acos(-1.0);
  CHECK_THROWS_AS(interval_tangent(pi * pi, 0.5, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(interval_tangent(4 * pi * pi, 0.5, 1.0, 1.0), DomainError);
}
