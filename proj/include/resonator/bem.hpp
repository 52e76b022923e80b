#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

#include "resonator/capacitance.hpp"
#include "resonator/geometry.hpp"

namespace resonator {

/// Surface discretization of all resonator boundaries: equal-area point
/// panels on a Fibonacci-sphere layout, piecewise-constant densities,
/// collocation at panel centers. The kernel is G0(x,y) = -1/(4 pi |x-y|);
/// the assembled single-layer matrix S is symmetric negative definite.
class BEMContext {
 public:
  static BEMContext assemble(const Arrangement& arr,
                             std::size_t panels_per_sphere);

  const Arrangement& arrangement() const { return arr_; }
  std::size_t panel_count() const { return centers_.size(); }
  std::size_t panels_per_sphere() const { return per_sphere_; }
  const Vec3& panel_center(std::size_t p) const { return centers_[p]; }
  double panel_area(std::size_t p) const { return area_; }
  /// 1-based resonator index owning panel p.
  std::size_t panel_sphere(std::size_t p) const { return sphere_of_[p] + 1; }

  const Eigen::MatrixXd& single_layer() const { return S_; }

  /// Solves S x = b.
  Eigen::VectorXd solve(const Eigen::VectorXd& b) const;
  Eigen::VectorXcd solve(const Eigen::VectorXcd& b) const;

  /// Column l is psi_l = S^{-1}[chi_{dD_l}].
  const Eigen::MatrixXd& charge_basis() const { return psi_; }

  /// Per-resonator panel-area-weighted sums of a panel density.
  Eigen::VectorXd resonator_integrals(const Eigen::VectorXd& density) const;
  Eigen::VectorXcd resonator_integrals(const Eigen::VectorXcd& density) const;

  /// Laplace single-layer potential of a panel density at an exterior point.
  double evaluate_laplace(const Eigen::VectorXd& density, const Vec3& x) const;
  /// Helmholtz single-layer potential at wavenumber k of a (possibly complex)
  /// panel density.
  std::complex<double> evaluate_helmholtz(const Eigen::VectorXcd& density,
                                          double k, const Vec3& x) const;

  /// 2 sqrt(A/pi), the equivalent-disc diameter of one panel.
  double panel_diameter() const;
  /// True when the panel diameter exceeds the gap width.
  bool gap_underresolved() const;

  /// Throws PointInsideResonator when x lies inside (or on) a resonator.
  void require_exterior(const Vec3& x) const;

 private:
  BEMContext(const Arrangement& arr, std::size_t per_sphere);

  Arrangement arr_;
  std::size_t per_sphere_;
  double area_;  // all panels share one area, 4 pi R^2 / per_sphere
  std::vector<Vec3> centers_;
  std::vector<Vec3> normals_;
  std::vector<std::size_t> sphere_of_;  // 0-based
  Eigen::MatrixXd S_;
  Eigen::LLT<Eigen::MatrixXd> neg_llt_;  // factorization of -S
  Eigen::MatrixXd psi_;
};

struct BEMCapacitanceResult {
  CapacitanceMatrix matrix;
  double asymmetry = 0.0;  // max |C - C^T| / max |C| before symmetrization
  bool resolution_warning = false;
};

/// C_ij = -sum_{panels on dD_i} psi_j * area, symmetrized to (C + C^T)/2.
BEMCapacitanceResult bem_capacitance(const BEMContext& ctx);
BEMCapacitanceResult bem_capacitance(const Arrangement& arr,
                                     std::size_t panels_per_sphere);

}  // namespace resonator
