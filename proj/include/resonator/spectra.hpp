#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <optional>
#include <vector>

#include "resonator/geometry.hpp"

namespace resonator {

enum class SpectrumKind { Chain, Ring, Grid, NonUniformChain3 };

struct SpectralGroup {
  double a = 0.0;
  std::size_t multiplicity = 1;
  std::optional<double> theta;  // angle behind a = 2(1 - cos theta), if any
};

/// Eigenvalues of the normalized structure matrix, sorted ascending and
/// grouped by multiplicity. The smallest value is always 0 (simple).
struct ClosedFormSpectrum {
  SpectrumKind kind = SpectrumKind::Chain;
  std::size_t N = 0;                 // total count, sum of multiplicities
  std::optional<GridDims> dims;      // set for Grid
  std::vector<SpectralGroup> groups;
  // NonUniformChain3 values are in units of |log eps|, not of rho(eps).
  bool log_units = false;

  /// Values repeated per multiplicity, ascending; length N.
  std::vector<double> expanded() const;
};

/// Chain: a_N^i = 2(1 - cos((i-1)pi/N)), i = 1..N, all simple.
ClosedFormSpectrum chain_eigenvalues(std::size_t N);

/// Ring: 0 simple, 2(1 - cos(2(t-1)pi/N)) double for t = 2..alpha(N),
/// plus 4 simple when N is even.
ClosedFormSpectrum ring_eigenvalues(std::size_t N);

/// Grid: multiset of pairwise sums of the two chain spectra.
ClosedFormSpectrum grid_eigenvalues(std::size_t m, std::size_t n);

/// alpha(N) = (N+1)/2 for odd N, N/2 for even N.
std::size_t ring_alpha(std::size_t N);

struct NonUniformResult {
  ClosedFormSpectrum spectrum;
  bool ratio_warning = false;  // |log eps1| / |log eps2| outside [1/8, 8]
};

/// Three resonators at gaps eps1, eps2: nonzero values are
/// L1 + L2 -+ sqrt(L1^2 + L2^2 - L1 L2) with L_k = |log eps_k|.
NonUniformResult nonuniform_chain3(double eps1, double eps2);

/// f_N(a) = det(structure matrix - a I), evaluated through the closed forms.
double chain_charpoly(std::size_t N, double a);
double ring_charpoly(std::size_t N, double a);
double grid_charpoly(std::size_t m, std::size_t n, double a);

struct EigenPair {
  double value;
  Eigen::VectorXd vector;  // unit norm
};

/// All eigenpairs of a symmetric matrix, values ascending. Throws
/// NotSymmetric when the relative asymmetry exceeds 1e-10.
std::vector<EigenPair> dense_eigen(const Eigen::MatrixXd& sym);

struct DistinctGroups {
  std::size_t count = 0;
  std::vector<std::vector<double>> groups;
};

/// Groups the expanded spectrum values within tol.
DistinctGroups distinct_count(const ClosedFormSpectrum& spec, double tol);

/// i = 1 gives the all-ones vector; otherwise
/// alpha_l = (sin(l theta_i) - sin((l-1) theta_i)) / sin(theta_i).
Eigen::VectorXd chain_eigenvector(std::size_t N, std::size_t i);

struct RingBasis {
  double a = 0.0;
  // One vector for the simple groups (all-ones / alternating), two
  // independent vectors for the interior double groups.
  std::vector<Eigen::VectorXd> vectors;
};

/// t indexes the spectral groups of ring_eigenvalues(N), 1-based.
RingBasis ring_eigenbasis(std::size_t N, std::size_t t);

/// Combinatorial Laplacians of the three layouts (the structure matrices).
Eigen::MatrixXd path_laplacian(std::size_t N);
Eigen::MatrixXd cycle_laplacian(std::size_t N);
Eigen::MatrixXd grid_laplacian(std::size_t m, std::size_t n);

struct LocalizationGroup {
  double a = 0.0;
  std::size_t multiplicity = 0;
  double max_residual = 0.0;  // max |lambda/rho - a| over the group
  double fitted_K = 0.0;      // max_residual * rho
};

struct LocalizationReport {
  std::vector<LocalizationGroup> groups;
  double max_residual = 0.0;
};

/// Partitions the eigenvalues of C/rho over the closed-form groups by
/// nearest value and reports per-group residuals. Throws CountMismatch when
/// a group does not capture exactly its multiplicity.
LocalizationReport localization_check(const Eigen::MatrixXd& C,
                                      const ClosedFormSpectrum& spec,
                                      double rho);

}  // namespace resonator
