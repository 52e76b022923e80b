#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "resonator/capacitance.hpp"
#include "resonator/errors.hpp"
#include "resonator/frequencies.hpp"
#include "resonator/verification.hpp"

using namespace resonator;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("gap schedule eps(delta)") {
  SUBCASE("Lambda=1, beta=0.5, delta=0.01 gives eps = e^-10") {
    PhysicalParams p;
    p.delta = 0.01;
    p.Lambda = 1.0;
    p.beta = 0.5;
    const auto g = epsilon_of_delta(p);
    CHECK(g.epsilon == doctest::Approx(std::exp(-10.0)).epsilon(1e-13));
    CHECK(g.delta_log_eps == doctest::Approx(0.1).epsilon(1e-13));
    CHECK_FALSE(g.underflow);
  }
  SUBCASE("Lambda=2, beta=0.9, delta=1e-3 (high precision reference)") {
    PhysicalParams p;
    p.delta = 1e-3;
    p.Lambda = 2.0;
    p.beta = 0.9;
    const auto g = epsilon_of_delta(p);
    // 2 * 10^{0.3}, computed with 40-digit arithmetic
    CHECK(std::abs(-g.log_epsilon - 3.9905246299377592) <= 1e-12);
    CHECK(std::abs(g.delta_log_eps - 3.9905246299377592e-3) <= 1e-15);
  }
  SUBCASE("underflow is flagged and the log value kept") {
    PhysicalParams p;
    p.delta = 1e-8;
    p.Lambda = 1.0;
    p.beta = 0.1;
    const auto g = epsilon_of_delta(p);
    CHECK(g.underflow);
    CHECK(g.epsilon == 0.0);
    CHECK(g.log_epsilon < -1e6);
    CHECK(std::isfinite(g.delta_log_eps));
  }
  SUBCASE("beta outside the open interval is rejected") {
    PhysicalParams p;
    p.beta = 0.0;
    CHECK_THROWS_AS(epsilon_of_delta(p), InvalidParams);
    p.beta = 1.0;
    CHECK_THROWS_AS(epsilon_of_delta(p), InvalidParams);
    p.beta = 0.5;
    p.delta = 1.0;
    CHECK_THROWS_AS(epsilon_of_delta(p), InvalidParams);
  }
}

TEST_CASE("two-resonator cross-check against the closed form") {
  PhysicalParams p;
  p.delta = 1e-3;
  p.Lambda = 1.7;
  p.beta = 0.4;
  p.v_b = 1.3;
  p.R = 0.8;
  const auto arr = Arrangement::chain(2, p.R, 0.01, true);
  const auto freqs = resonant_frequencies(arr, p);
  REQUIRE(freqs.size() == 2);
  const double expected = std::sqrt(3.0 * p.Lambda * p.v_b * p.v_b /
                                    (2.0 * p.R * p.R * p.R)) *
                          std::pow(p.delta, p.beta / 2.0);
  CHECK(std::abs(freqs[1].re - expected) <= 1e-12 * expected);
  CHECK(freqs[1].a_value == doctest::Approx(2.0));
}

TEST_CASE("chain N=4 frequency ratios") {
  PhysicalParams p;
  const auto freqs =
      resonant_frequencies(Arrangement::chain(4, 1.0, 0.01), p);
  REQUIRE(freqs.size() == 4);
  const double s2 = std::sqrt(2.0);
  CHECK(freqs[2].re / freqs[1].re ==
        doctest::Approx(std::sqrt(2.0 / (2.0 - s2))).epsilon(1e-13));
  CHECK(freqs[3].re / freqs[1].re ==
        doctest::Approx(std::sqrt((2.0 + s2) / (2.0 - s2))).epsilon(1e-13));
  CHECK_FALSE(freqs[0].m_known);  // omega_1 needs M
  CHECK(freqs[0].error_order.find("M unavailable") != std::string::npos);
}

TEST_CASE("ring N=6 frequencies in units of eta") {
  PhysicalParams p;
  p.delta = 1e-4;
  p.Lambda = 2.0;
  p.beta = 0.3;
  const auto freqs = resonant_frequencies(Arrangement::ring(6, 1.0, 0.01), p);
  const double eta = eta_factor(p);
  REQUIRE(freqs.size() == 4);
  CHECK(freqs[1].re == doctest::Approx(eta).epsilon(1e-13));
  CHECK(freqs[1].multiplicity == 2);
  CHECK(freqs[2].re == doctest::Approx(std::sqrt(3.0) * eta).epsilon(1e-13));
  CHECK(freqs[2].multiplicity == 2);
  CHECK(freqs[3].re == doctest::Approx(2.0 * eta).epsilon(1e-13));
  CHECK(freqs[3].multiplicity == 1);

  // total multiplicity N, sorted ascending
  std::size_t total = 0;
  for (const auto& f : freqs) total += f.multiplicity;
  CHECK(total == 6);
  for (std::size_t k = 1; k < freqs.size(); ++k) {
    CHECK(freqs[k].re >= freqs[k - 1].re);
  }
}

TEST_CASE("quadrupling Lambda doubles every omega_i, i >= 2, exactly") {
  PhysicalParams p;
  p.delta = 3e-3;
  p.Lambda = 0.7;
  p.beta = 0.6;
  const auto arr = Arrangement::grid(2, 3, 1.0, 0.01);
  const auto m_source = MSource::user(4.0 * kPi * 0.85);
  const auto base = resonant_frequencies(arr, p, m_source);
  p.Lambda = 4.0 * 0.7;
  const auto scaled = resonant_frequencies(arr, p, m_source);
  CHECK(scaled[0].re == base[0].re);  // omega_1 carries no Lambda
  for (std::size_t k = 1; k < base.size(); ++k) {
    CHECK(scaled[k].re == 2.0 * base[k].re);  // bitwise
  }
}

TEST_CASE("omega_i(delta) -> 0 as delta -> 0") {
  PhysicalParams p;
  const auto arr = Arrangement::chain(4, 1.0, 0.01);
  double last = 1e30;
  for (double delta : {1e-2, 1e-4, 1e-6}) {
    p.delta = delta;
    const auto freqs = resonant_frequencies(arr, p);
    CHECK(freqs.back().re < last);
    last = freqs.back().re;
  }
  CHECK(last < 1e-1);
}

TEST_CASE("an explicit gap overrides the schedule's |log eps|") {
  PhysicalParams p;
  p.delta = 1e-3;
  const auto arr = Arrangement::chain(3, 1.0, 0.05);
  const auto freqs = resonant_frequencies(arr, p, MSource::unavailable(),
                                          arr.gap());
  // omega_2 = sqrt(3 a delta |log eps| / 4) with a = 1 for N = 3
  const double expected =
      std::sqrt(3.0 * 1.0 * p.delta * std::abs(std::log(0.05)) / 4.0);
  CHECK(freqs[1].re == doctest::Approx(expected).epsilon(1e-13));
  CHECK_THROWS_AS(
      resonant_frequencies(arr, p, MSource::unavailable(), 1.5),
      InvalidGap);
}

TEST_CASE("user-supplied M fills omega_1") {
  PhysicalParams p;
  const auto arr = Arrangement::chain(4, 1.0, 0.01);
  const double M = 4.0 * kPi * 0.9;
  const auto freqs = resonant_frequencies(arr, p, MSource::user(M));
  CHECK(freqs[0].m_known);
  const double expected =
      std::sqrt(3.0 * p.v_b * p.v_b * M * p.delta / (4.0 * kPi));
  CHECK(freqs[0].re == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("imaginary parts") {
  PhysicalParams p;
  p.delta = 1e-3;
  p.v = 1.5;
  p.v_b = 1.2;
  const std::vector<double> vols(4, sphere_volume(1.0));

  SUBCASE("vanishing row sums give exactly zero at leading order") {
    const auto C = realize(leading_model(Arrangement::chain(4, 1.0, 0.01)), 1e-5);
    const auto pairs = dense_eigen(C.entries);
    const auto im = imaginary_parts(C, pairs, p, vols);
    for (Eigen::Index k = 0; k < im.size(); ++k) {
      CHECK(im[k] == 0.0);
    }
  }
  SUBCASE("always nonpositive") {
    const Eigen::MatrixXd mu = random_symmetric_mu(4, 123);
    const auto C =
        realize(leading_model(Arrangement::chain(4, 1.0, 0.01), mu), 1e-5);
    const auto pairs = dense_eigen(C.entries);
    const auto im = imaginary_parts(C, pairs, p, vols);
    for (Eigen::Index k = 0; k < im.size(); ++k) {
      CHECK(im[k] <= 0.0);
    }
  }
  SUBCASE("chain N=4 antisymmetric modes lose their leading imaginary part") {
    // mu = I keeps the eigenvectors and centrosymmetry but makes row sums
    // nonzero, so the symmetric modes acquire a strictly negative Im.
    const Eigen::MatrixXd mu = Eigen::MatrixXd::Identity(4, 4);
    const auto C =
        realize(leading_model(Arrangement::chain(4, 1.0, 0.01), mu), 1e-5);
    const auto pairs = dense_eigen(C.entries);
    const auto im = imaginary_parts(C, pairs, p, vols);
    CHECK(im[0] < 0.0);
    CHECK(im[2] < 0.0);
    CHECK(std::abs(im[1]) <= 1e-10 * std::abs(im[0]));
    CHECK(std::abs(im[3]) <= 1e-10 * std::abs(im[0]));
  }
  SUBCASE("matches an index-loop oracle") {
    const Eigen::MatrixXd mu = random_symmetric_mu(4, 99);
    const auto C =
        realize(leading_model(Arrangement::ring(4, 1.0, 0.01), mu), 1e-4);
    const auto pairs = dense_eigen(C.entries);
    const auto im = imaginary_parts(C, pairs, p, vols);
    const double coef = p.delta * p.v_b * p.v_b / (8.0 * kPi * p.v);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      // explicit alpha^T C J C alpha with scalar loops
      double quad = 0.0;
      for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
          double ci = 0.0, cj = 0.0;
          for (int l = 0; l < 4; ++l) {
            ci += pairs[k].vector[l] * C.entries(l, i);
            cj += C.entries(j, l) * pairs[k].vector[l];
          }
          quad += ci * cj;
        }
      }
      double norm = 0.0;
      for (int l = 0; l < 4; ++l) {
        norm += vols[static_cast<std::size_t>(l)] * pairs[k].vector[l] *
                pairs[k].vector[l];
      }
      const double expected = -coef * quad / norm;
      // relative to the vector scale so exact zeros compare cleanly
      CHECK(std::abs(im[static_cast<Eigen::Index>(k)] - expected) <=
            1e-12 * im.cwiseAbs().maxCoeff());
    }
  }
}

TEST_CASE("span and count summary") {
  PhysicalParams p;
  SUBCASE("chain") {
    const auto sc = span_and_count(Arrangement::chain(16, 1.0, 0.01), p);
    CHECK(sc.count == 16);
    CHECK(sc.span == "(0, 2*eta)");
    CHECK(sc.eta == doctest::Approx(eta_factor(p)));
  }
  SUBCASE("ring") {
    CHECK(span_and_count(Arrangement::ring(5, 1.0, 0.01), p).count == 3);
    CHECK(span_and_count(Arrangement::ring(6, 1.0, 0.01), p).span ==
          "(0, 2*eta]");
  }
  SUBCASE("grid") {
    const auto sc = span_and_count(Arrangement::grid(2, 8, 1.0, 0.01), p);
    CHECK(sc.count == 15);
    CHECK(sc.span == "(0, 2*sqrt(2)*eta)");
  }
  SUBCASE("count equals the distinct count of the emitted frequencies") {
    for (const Arrangement& arr :
         {Arrangement::chain(7, 1.0, 0.01), Arrangement::ring(9, 1.0, 0.01),
          Arrangement::grid(3, 4, 1.0, 0.01)}) {
      const auto freqs = resonant_frequencies(arr, p);
      CHECK(span_and_count(arr, p).count == freqs.size());
    }
  }
}
