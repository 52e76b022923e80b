#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "resonator/geometry.hpp"
#include "resonator/spectra.hpp"

namespace resonator {

inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

/// Kelvin image-charge series for two equal spheres of radius R at center
/// distance d > 2R, in the normalization Cap(isolated sphere) = 4 pi R.
/// Adaptive truncation to absolute tail < 1e-10.
Eigen::Matrix2d two_sphere_series(double R, double d);

/// Symmetric matrix with entries uniform in [-1, 1]; the draw is fully
/// specified (mt19937_64 + explicit 53-bit mapping) so runs are
/// bit-reproducible across platforms.
Eigen::MatrixXd random_symmetric_mu(std::size_t n, std::uint64_t seed);

struct ConvergenceReport {
  SpectrumKind kind = SpectrumKind::Chain;
  std::vector<double> rho_grid;
  std::vector<double> residuals;  // max_i dist(lambda_i/rho, closed form)
  double rate_exponent = 0.0;     // slope of log(residual) vs log(rho)
  double rate_constant = 0.0;     // fitted K in residual ~ K rho^exponent
  bool counts_ok = false;         // every group captured its multiplicity
  bool pass = false;              // counts_ok and rate_exponent <= -0.8
};

/// Realizes kappa*rho + mu for a fixed random mu over the rho grid and
/// measures how fast the normalized spectrum approaches the closed form.
ConvergenceReport asymptotic_convergence(SpectrumKind kind, std::size_t N_or_m,
                                         std::size_t n_for_grid,
                                         const std::vector<double>& rho_grid,
                                         std::uint64_t seed = kDefaultSeed);

/// Same campaign with an explicit offset matrix (mu = 0 gives residuals
/// that vanish identically).
ConvergenceReport asymptotic_convergence(SpectrumKind kind, std::size_t N_or_m,
                                         std::size_t n_for_grid,
                                         const std::vector<double>& rho_grid,
                                         const Eigen::MatrixXd& mu);

struct TableRow {
  std::string label;
  std::vector<std::size_t> expected;
  std::vector<std::size_t> computed;
  bool match = false;
};

struct TablesReport {
  std::vector<TableRow> counts;        // distinct leading-order frequencies
  std::vector<std::string> spans;      // chain, ring, grid span strings
  bool pass = false;
  std::string diff;                    // empty when pass

  void require_clean() const;  // throws TableMismatch when !pass
};

/// Regenerates the frequency count and span tables and diffs them against
/// the embedded reference values.
TablesReport reference_tables();

}  // namespace resonator
