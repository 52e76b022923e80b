#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <thread>

#include "resonator/bem.hpp"
#include "resonator/errors.hpp"
#include "resonator/verification.hpp"

using namespace resonator;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("panel layout covers each sphere exactly") {
  const auto ctx = BEMContext::assemble(Arrangement::chain(2, 1.0, 0.1, true), 400);
  CHECK(ctx.panel_count() == 800);
  double area = 0.0;
  for (std::size_t p = 0; p < 400; ++p) {
    CHECK(ctx.panel_sphere(p) == 1);
    area += ctx.panel_area(p);
  }
  CHECK(std::abs(area - 4.0 * kPi) <= 0.005 * 4.0 * kPi);
  // panel centers sit on the sphere surface
  for (std::size_t p = 0; p < 400; ++p) {
    CHECK(ctx.panel_center(p).norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(
      BEMContext::assemble(Arrangement::chain(2, 1.0, 0.1, true), 50),
      InvalidParams);
}

TEST_CASE("single-layer matrix is symmetric and negative definite") {
  const auto ctx =
      BEMContext::assemble(Arrangement::chain(2, 1.0, 0.2, true), 200);
  const Eigen::MatrixXd& S = ctx.single_layer();
  CHECK((S - S.transpose()).cwiseAbs().maxCoeff() == 0.0);
  const Eigen::VectorXd eigs =
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(S).eigenvalues();
  CHECK(eigs.maxCoeff() < 0.0);
}

TEST_CASE("isolated sphere capacity: 4 pi R within 1% at 2000 panels") {
  const auto one = Arrangement::chain(1, 1.0, 0.5, true);
  const auto result = bem_capacitance(one, 2000);
  CHECK(std::abs(result.matrix.entries(0, 0) - 4.0 * kPi) <= 0.01 * 4.0 * kPi);
  CHECK(result.matrix.provenance == Provenance::BEM);
  CHECK_FALSE(result.resolution_warning);  // N = 1 has no gap to resolve
}

TEST_CASE("two spheres agree with the image series within 1% at 2000 panels") {
  const auto arr = Arrangement::chain(2, 1.0, 0.1, true);
  const auto result = bem_capacitance(arr, 2000);
  const Eigen::Matrix2d series = two_sphere_series(1.0, 2.1);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      CHECK(std::abs(result.matrix.entries(i, j) - series(i, j)) <=
            0.01 * std::abs(series(i, j)));
    }
  }
  CHECK(result.asymmetry <= 1e-6);
}

TEST_CASE("coupling grows as the gap shrinks") {
  const auto c1 =
      bem_capacitance(Arrangement::chain(2, 1.0, 0.2, true), 700).matrix;
  const auto c2 =
      bem_capacitance(Arrangement::chain(2, 1.0, 0.1, true), 700).matrix;
  CHECK(c2.entries(0, 1) < c1.entries(0, 1));  // more negative
}

TEST_CASE("capacitance matrix properties (BEM provenance)") {
  const auto arr = Arrangement::chain(4, 1.0, 0.1);
  const auto result = bem_capacitance(arr, 500);
  const Eigen::MatrixXd& C = result.matrix.entries;

  CHECK(result.asymmetry <= 1e-6);
  CHECK((C - C.transpose()).cwiseAbs().maxCoeff() == 0.0);  // symmetrized
  const Eigen::VectorXd eigs =
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(C).eigenvalues();
  CHECK(eigs.minCoeff() > 0.0);
  for (int i = 0; i < 4; ++i) {
    CHECK(C(i, i) > 0.0);
    double off = 0.0;
    for (int j = 0; j < 4; ++j) {
      if (j != i) {
        CHECK(C(i, j) < 0.0);
        off += std::abs(C(i, j));
      }
    }
    CHECK(C(i, i) > off);
  }
}

TEST_CASE("average joint capacity lies below the isolated capacity") {
  const auto result = bem_capacitance(Arrangement::chain(2, 1.0, 0.1, true), 700);
  const double M = average_capacity(result.matrix);
  CHECK(M > 0.0);
  CHECK(M < 4.0 * kPi);
}

TEST_CASE("resolution warning fires when panels are wider than the gap") {
  const auto narrow = bem_capacitance(Arrangement::chain(2, 1.0, 1e-3, true), 400);
  CHECK(narrow.resolution_warning);
  const auto wide = bem_capacitance(Arrangement::chain(2, 1.0, 0.3, true), 400);
  CHECK_FALSE(wide.resolution_warning);
}

TEST_CASE("assembled context supports concurrent read-only use") {
  const auto ctx =
      BEMContext::assemble(Arrangement::chain(2, 1.0, 0.2, true), 300);
  const Eigen::VectorXd chi1 = ctx.charge_basis().col(0);
  Eigen::VectorXd results[4];
  std::vector<std::thread> workers;
  for (int t = 0; t < 4; ++t) {
    workers.emplace_back([&, t] {
      Eigen::VectorXd b = Eigen::VectorXd::Constant(
          static_cast<Eigen::Index>(ctx.panel_count()), 1.0 + t);
      results[t] = ctx.solve(b);
    });
  }
  for (auto& w : workers) {
    w.join();
  }
  for (int t = 1; t < 4; ++t) {
    // solutions scale linearly with the boundary data
    const Eigen::VectorXd expected = results[0] * (1.0 + t);
    CHECK((results[t] - expected).cwiseAbs().maxCoeff() <=
          1e-10 * expected.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("C_11 grows affinely in |log eps| (R^2 > 0.99)") {
  // Panel counts scale with the gap so the discretization resolves each
  // point; the smallest gaps dominate the run time.
  const double eps_grid[5] = {1e-3, 3.16e-3, 1e-2, 3.16e-2, 1e-1};
  const std::size_t panels[5] = {6000, 4000, 2000, 1500, 1500};
  double xs[5];
  double ys[5];
  for (int k = 0; k < 5; ++k) {
    const auto arr = Arrangement::chain(2, 1.0, eps_grid[k], true);
    ys[k] = bem_capacitance(arr, panels[k]).matrix.entries(0, 0);
    xs[k] = std::abs(std::log(eps_grid[k]));
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int k = 0; k < 5; ++k) {
    sx += xs[k];
    sy += ys[k];
    sxx += xs[k] * xs[k];
    sxy += xs[k] * ys[k];
  }
  const double slope = (5.0 * sxy - sx * sy) / (5.0 * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / 5.0;
  double ss_res = 0, ss_tot = 0;
  for (int k = 0; k < 5; ++k) {
    ss_res += std::pow(ys[k] - slope * xs[k] - intercept, 2);
    ss_tot += std::pow(ys[k] - sy / 5.0, 2);
  }
  const double r2 = 1.0 - ss_res / ss_tot;
  MESSAGE("slope = " << slope << ", R^2 = " << r2);
  CHECK(r2 > 0.99);
  CHECK(slope > 0.0);
}
