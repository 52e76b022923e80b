#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "resonator/capacitance.hpp"
#include "resonator/errors.hpp"
#include "resonator/geometry.hpp"
#include "resonator/spectra.hpp"
#include "resonator/verification.hpp"

using namespace resonator;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("leading model kappa is the tangency-graph Laplacian") {
  SUBCASE("chain N=3") {
    const auto model = leading_model(Arrangement::chain(3, 1.0, 0.01));
    Eigen::Matrix3i expected;
    expected << 1, -1, 0, -1, 2, -1, 0, -1, 1;
    CHECK(model.kappa == expected);
    CHECK(model.mu.cwiseAbs().maxCoeff() == 0.0);
    CHECK(model.length_scale == 1.0);
  }
  SUBCASE("ring N=4 is circulant") {
    const auto model = leading_model(Arrangement::ring(4, 1.0, 0.01));
    Eigen::Matrix4i expected;
    expected << 2, -1, 0, -1, -1, 2, -1, 0, 0, -1, 2, -1, -1, 0, -1, 2;
    CHECK(model.kappa == expected);
  }
  SUBCASE("grid 2x2 equals the 4-cycle Laplacian up to relabeling") {
    const auto model = leading_model(Arrangement::grid(2, 2, 1.0, 0.01));
    // grid labels 1,2,3,4 walk the square as 1-2, 1-3, 2-4, 3-4
    Eigen::Matrix4i expected;
    expected << 2, -1, -1, 0, -1, 2, 0, -1, -1, 0, 2, -1, 0, -1, -1, 2;
    CHECK(model.kappa == expected);
    const auto eigs = dense_eigen(model.kappa.cast<double>());
    const auto cyc = dense_eigen(cycle_laplacian(4));
    for (std::size_t k = 0; k < 4; ++k) {
      CHECK(eigs[k].value == doctest::Approx(cyc[k].value).epsilon(1e-12));
    }
  }
  SUBCASE("offsets must be symmetric and sized") {
    const auto arr = Arrangement::chain(3, 1.0, 0.01);
    Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(3, 3);
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(leading_model(arr, bad), AsymmetricOffsets);
    CHECK_THROWS_AS(leading_model(arr, Eigen::MatrixXd::Zero(2, 2)),
                    DimensionMismatch);
  }
}

TEST_CASE("realize scales kappa by rho(eps)") {
  SUBCASE("chain N=3 at eps = e^-10") {
    const auto model = leading_model(Arrangement::chain(3, 1.0, 0.01));
    const auto C = realize(model, std::exp(-10.0));
    CHECK(C.entries(0, 0) == doctest::Approx(10.0 * kPi).epsilon(1e-13));
    CHECK(C.entries(0, 1) == doctest::Approx(-10.0 * kPi).epsilon(1e-13));
    CHECK(C.entries(1, 1) == doctest::Approx(20.0 * kPi).epsilon(1e-13));
    CHECK(C.provenance == Provenance::Model);
  }
  SUBCASE("ring N=4 at eps = e^-1") {
    const auto model = leading_model(Arrangement::ring(4, 1.0, 0.01));
    const auto C = realize(model, std::exp(-1.0));
    for (int i = 0; i < 4; ++i) {
      CHECK(C.entries(i, i) == doctest::Approx(2.0 * kPi).epsilon(1e-13));
      CHECK(C.entries(i, (i + 1) % 4) == doctest::Approx(-kPi).epsilon(1e-13));
    }
  }
  SUBCASE("chain N=4 eigenvalues at eps = 1e-6") {
    const auto model = leading_model(Arrangement::chain(4, 1.0, 0.01));
    const auto C = realize(model, 1e-6);
    const double rho = kPi * 6.0 * std::log(10.0);
    const auto pairs = dense_eigen(C.entries);
    const double s2 = std::sqrt(2.0);
    const double expected[4] = {0.0, (2.0 - s2) * rho, 2.0 * rho,
                                (2.0 + s2) * rho};
    for (int k = 0; k < 4; ++k) {
      CHECK(std::abs(pairs[static_cast<std::size_t>(k)].value - expected[k]) <=
            1e-9 * rho);
    }
  }
  SUBCASE("eps at or above the length scale is rejected") {
    const auto model = leading_model(Arrangement::chain(3, 1.0, 0.01));
    CHECK_THROWS_AS(realize(model, 1.0), GapTooLarge);
    CHECK_THROWS_AS(realize(model, 1.5), GapTooLarge);
    CHECK_THROWS_AS(realize(model, 0.0), InvalidGap);
  }
  SUBCASE("length scale enters the log argument") {
    auto model = leading_model(Arrangement::chain(3, 2.0, 0.01));
    CHECK(model.length_scale == 2.0);
    const auto C = realize(model, 2.0 * std::exp(-5.0));
    CHECK(C.entries(0, 0) == doctest::Approx(5.0 * kPi).epsilon(1e-13));
  }
}

TEST_CASE("generalized capacitance matrix") {
  SUBCASE("identity passthrough") {
    CapacitanceMatrix C;
    C.entries = Eigen::MatrixXd::Identity(3, 3);
    C.provenance = Provenance::UserSupplied;
    const auto G = generalized(C, 1.0, 1.0, {1.0, 1.0, 1.0});
    CHECK(G.entries.isApprox(C.entries, 0.0));
  }
  SUBCASE("linear in delta") {
    const auto model = leading_model(Arrangement::chain(3, 1.0, 0.01));
    const auto C = realize(model, 1e-3);
    const std::vector<double> vols(3, sphere_volume(1.0));
    const auto G1 = generalized(C, 1e-3, 1.0, vols);
    const auto G2 = generalized(C, 2e-3, 1.0, vols);
    CHECK((G2.entries - 2.0 * G1.entries).cwiseAbs().maxCoeff() <= 1e-15);
  }
  SUBCASE("chain N=4: lambda~_3 matches the scaling relation") {
    const auto model = leading_model(Arrangement::chain(4, 1.0, 0.01));
    const auto C = realize(model, 1e-6);
    const double delta = 1e-3;
    const std::vector<double> vols(4, sphere_volume(1.0));
    const auto G = generalized(C, delta, 1.0, vols);
    const auto pairs = dense_eigen(G.entries);
    const double rho = kPi * 6.0 * std::log(10.0);
    const double expected = 3.0 * delta / (4.0 * kPi) * 2.0 * rho;
    CHECK(std::abs(pairs[2].value - expected) <= 1e-9 * expected);
  }
  SUBCASE("dimension mismatch") {
    CapacitanceMatrix C;
    C.entries = Eigen::MatrixXd::Identity(3, 3);
    CHECK_THROWS_AS(generalized(C, 1.0, 1.0, {1.0, 1.0}), DimensionMismatch);
  }
}

TEST_CASE("average capacity") {
  SUBCASE("model with zero offsets has vanishing row sums, so M = 0") {
    const auto model = leading_model(Arrangement::ring(5, 1.0, 0.01));
    const auto C = realize(model, 1e-4);
    CHECK(std::abs(average_capacity(C)) <= 1e-12);
    // row sums are exactly zero
    CHECK(C.entries.rowwise().sum().cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("identity matrix") {
    CapacitanceMatrix C;
    C.entries = Eigen::MatrixXd::Identity(3, 3);
    CHECK(average_capacity(C) == doctest::Approx(1.0));
  }
}

TEST_CASE("model realization: smallest eigenvalue is zero, spectrum converges") {
  for (const Arrangement& arr :
       {Arrangement::chain(5, 1.0, 0.01), Arrangement::ring(6, 1.0, 0.01),
        Arrangement::grid(2, 3, 1.0, 0.01)}) {
    const auto model = leading_model(arr);
    const auto C = realize(model, 1e-4);
    const auto pairs = dense_eigen(C.entries);
    CHECK(std::abs(pairs[0].value) <= 1e-10);
  }

  // |lambda_i / rho - a_i| <= K / rho with a single constant over the grid,
  // for bounded random offsets
  const auto arr = Arrangement::chain(5, 1.0, 0.5);
  const Eigen::MatrixXd mu = random_symmetric_mu(5, kDefaultSeed);
  auto model = leading_model(arr, mu);
  const auto closed = chain_eigenvalues(5).expanded();
  double K = 0.0;
  for (double rho : {1e2, 3e2, 6e2}) {
    const double eps = std::exp(-rho / kPi);
    const auto C = realize(model, eps);
    const auto pairs = dense_eigen(C.entries);
    for (std::size_t k = 0; k < 5; ++k) {
      K = std::max(K, std::abs(pairs[k].value / rho - closed[k]) * rho);
    }
  }
  CHECK(K < 20.0);  // O(1) constant, not growing with rho
}
