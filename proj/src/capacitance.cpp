#include "resonator/capacitance.hpp"

#include <cmath>
#include <numbers>

#include "resonator/errors.hpp"

namespace resonator {

double rho_factor(double eps, double length_scale) {
  if (!(eps > 0.0)) {
    throw InvalidGap("eps must be positive");
  }
  if (!(eps < length_scale)) {
    throw GapTooLarge("eps must be below the length scale (log sign flips)");
  }
  return std::numbers::pi * std::abs(std::log(eps / length_scale));
}

CapacitanceModel leading_model(const Arrangement& arr,
                               const std::optional<Eigen::MatrixXd>& offsets) {
  const auto graph = tangency_graph(arr);
  const Eigen::Index N = static_cast<Eigen::Index>(arr.size());

  CapacitanceModel model;
  model.kappa = Eigen::MatrixXi::Zero(N, N);
  for (const Edge& e : graph.edges) {
    const Eigen::Index i = static_cast<Eigen::Index>(e.first) - 1;
    const Eigen::Index j = static_cast<Eigen::Index>(e.second) - 1;
    model.kappa(i, j) -= 1;
    model.kappa(j, i) -= 1;
    model.kappa(i, i) += 1;
    model.kappa(j, j) += 1;
  }

  if (offsets) {
    if (offsets->rows() != N || offsets->cols() != N) {
      throw DimensionMismatch("offset matrix size does not match N");
    }
    if ((*offsets - offsets->transpose()).cwiseAbs().maxCoeff() > 0.0) {
      throw AsymmetricOffsets("offset matrix must be symmetric");
    }
    model.mu = *offsets;
  } else {
    model.mu = Eigen::MatrixXd::Zero(N, N);
  }
  model.length_scale = arr.radius();
  return model;
}

CapacitanceMatrix realize(const CapacitanceModel& model, double eps) {
  const double rho = rho_factor(eps, model.length_scale);
  CapacitanceMatrix C;
  C.entries = model.kappa.cast<double>() * rho + model.mu;
  C.provenance = Provenance::Model;
  return C;
}

GeneralizedCapacitanceMatrix generalized(const CapacitanceMatrix& C,
                                         double delta, double v_b,
                                         const std::vector<double>& volumes) {
  if (!(delta > 0.0) || !(v_b > 0.0)) {
    throw InvalidParams("delta and v_b must be positive");
  }
  if (volumes.size() != C.size()) {
    throw DimensionMismatch("volume list size does not match N");
  }
  GeneralizedCapacitanceMatrix G;
  G.entries = C.entries;
  for (Eigen::Index i = 0; i < C.entries.rows(); ++i) {
    const double vol = volumes[static_cast<std::size_t>(i)];
    if (!(vol > 0.0)) {
      throw InvalidParams("volumes must be positive");
    }
    G.entries.row(i) *= delta * v_b * v_b / vol;
  }
  G.delta = delta;
  G.v_b = v_b;
  G.volumes = volumes;
  return G;
}

double average_capacity(const CapacitanceMatrix& C) {
  return C.entries.sum() / static_cast<double>(C.size());
}

double sphere_volume(double R) {
  return 4.0 * std::numbers::pi * R * R * R / 3.0;
}

}  // namespace resonator
