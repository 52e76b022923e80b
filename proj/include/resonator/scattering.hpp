#pragma once

#include <Eigen/Core>
#include <complex>
#include <vector>

#include "resonator/bem.hpp"
#include "resonator/frequencies.hpp"
#include "resonator/geometry.hpp"
#include "resonator/modes.hpp"

namespace resonator {

struct IncidentWave {
  std::complex<double> amplitude = 1.0;
  Vec3 direction = Vec3(1.0, 0.0, 0.0);  // unit vector
  double omega = 0.0;                    // driving frequency, >= 0

  std::complex<double> evaluate(const Vec3& x, double v) const;
};

/// Mode-vector matrix: column i is the i-th normalized mode profile.
Eigen::MatrixXd mode_matrix(const std::vector<ModeProfile>& modes);

/// Solves S phi = u^in on the panels and returns the per-resonator
/// panel-area-weighted sums of phi.
Eigen::VectorXcd incident_projection(const BEMContext& ctx,
                                     const IncidentWave& wave, double v);

struct ScatteringSolution {
  Eigen::VectorXcd coefficients;  // a_1 .. a_N
  double residual = 0.0;          // relative residual of the linear solve
  bool near_resonance = false;    // some |omega_i^2 - omega^2| under the floor
};

/// Solves V diag(omega_i^2 - omega^2) a = -(3 delta v_b^2 / (4 pi R^3)) rhs.
/// A NearResonance condition (|omega_i^2 - omega^2| < 1e-12 omega_i^2) sets
/// the warning flag; the solution is still returned.
ScatteringSolution solve_coefficients(const std::vector<double>& omegas,
                                      const Eigen::MatrixXd& mode_vectors,
                                      const Eigen::VectorXcd& rhs,
                                      const PhysicalParams& p, double omega);

/// u(x) = u^in - S_D^k[S_D^{-1}[u^in]] + sum_i a_i u^i, with the modal part
/// evaluated through the Laplace layers of psi_l.
class ScatteredField {
 public:
  ScatteredField(const BEMContext& ctx, Eigen::MatrixXd mode_vectors,
                 Eigen::VectorXcd coefficients, IncidentWave wave, double v);

  /// Throws PointInsideResonator for interior points.
  std::complex<double> operator()(const Vec3& x) const;

 private:
  const BEMContext& ctx_;
  Eigen::MatrixXd modes_;
  Eigen::VectorXcd coefficients_;
  IncidentWave wave_;
  double v_;
  Eigen::VectorXcd phi_in_;        // S^{-1}[u^in] on the panels
  Eigen::VectorXd mode_density_re_;  // sum_i Re(a_i) sum_l alpha_l^i psi_l
  Eigen::VectorXd mode_density_im_;
};

std::vector<std::complex<double>> field_at(const BEMContext& ctx,
                                           const ScatteringSolution& sol,
                                           const Eigen::MatrixXd& mode_vectors,
                                           const IncidentWave& wave, double v,
                                           const std::vector<Vec3>& points);

}  // namespace resonator
