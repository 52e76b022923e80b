#pragma once

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "resonator/geometry.hpp"

namespace resonator {

/// Leading-order structure of the capacitance matrix: entries are
/// kappa_ij * rho(eps) + mu_ij, where kappa is the combinatorial Laplacian of
/// the tangency graph and mu collects the bounded offsets.
struct CapacitanceModel {
  Eigen::MatrixXi kappa;
  Eigen::MatrixXd mu;
  double length_scale = 1.0;  // the log argument is eps / length_scale
};

enum class Provenance { Model, BEM, UserSupplied };

struct CapacitanceMatrix {
  Eigen::MatrixXd entries;
  Provenance provenance = Provenance::Model;

  std::size_t size() const { return static_cast<std::size_t>(entries.rows()); }
};

/// rho(eps) = pi * |log(eps / length_scale)|.
double rho_factor(double eps, double length_scale = 1.0);

/// kappa from the tangency graph; mu from the given offsets or zero.
/// Throws AsymmetricOffsets when offsets are not symmetric.
CapacitanceModel leading_model(
    const Arrangement& arr,
    const std::optional<Eigen::MatrixXd>& offsets = std::nullopt);

/// entries = kappa * rho(eps) + mu. Throws GapTooLarge when
/// eps >= length_scale (the log changes sign).
CapacitanceMatrix realize(const CapacitanceModel& model, double eps);

struct GeneralizedCapacitanceMatrix {
  Eigen::MatrixXd entries;
  double delta = 0.0;
  double v_b = 0.0;
  std::vector<double> volumes;
};

/// C~_ij = (delta * v_b^2 / |D_i|) * C_ij.
GeneralizedCapacitanceMatrix generalized(const CapacitanceMatrix& C,
                                         double delta, double v_b,
                                         const std::vector<double>& volumes);

/// M = (1/N) sum_ij C_ij, the average capacity.
double average_capacity(const CapacitanceMatrix& C);

/// |B_R| = 4 pi R^3 / 3.
double sphere_volume(double R);

}  // namespace resonator
