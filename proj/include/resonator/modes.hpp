#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "resonator/capacitance.hpp"
#include "resonator/geometry.hpp"

namespace resonator {

enum class GapRate {
  Full,       // |grad u| ~ 1/eps in the gap
  Suppressed  // |grad u| <~ 1/(eps |log eps|)
};

struct ModeProfile {
  std::size_t index = 1;  // 1-based mode index, ascending with a
  double a_value = 0.0;
  /// Value of u^i on each resonator boundary, scaled to max |.| = 1 with the
  /// first nonzero entry positive.
  Eigen::VectorXd surface_values;
  std::map<Edge, GapRate> gap_rates;
  std::string error_order;
  /// True when the values came from a dense eigensolve rather than a closed
  /// form (ring interior pairs, degenerate grid groups).
  bool oracle_resolved = false;
};

/// All N mode profiles, ascending in a. Ring arrangements need C to resolve
/// the interior double pairs (throws MissingCapacitance otherwise).
std::vector<ModeProfile> mode_profiles(
    const Arrangement& arr,
    const std::optional<CapacitanceMatrix>& C = std::nullopt);

/// Re-classifies every tangency gap of the profile at the given eps:
/// Suppressed iff the adjacent surface values differ by at most the
/// suppression tolerance (1e-9 closed form, max(1e-8, 10/rho) oracle).
std::map<Edge, GapRate> gap_blowup(const Arrangement& arr,
                                   const ModeProfile& profile, double eps);

struct RingMixing {
  double k1 = 0.0;
  double k2 = 0.0;
  double residual = 0.0;  // norm of the part outside span{beta1, beta2}
};

/// Least-squares projection of the two dense eigenvectors of the t-th ring
/// group onto span{beta1, beta2}. Throws ResidualTooLarge when residual_tol
/// is given and exceeded.
std::vector<RingMixing> resolve_ring_mixing(
    const CapacitanceMatrix& C, std::size_t N, std::size_t t,
    std::optional<double> residual_tol = std::nullopt);

/// In-place: max |.| = 1, first nonzero entry positive. Idempotent.
Eigen::VectorXd normalize_profile(const Eigen::VectorXd& v);

}  // namespace resonator
