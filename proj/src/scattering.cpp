#include "resonator/scattering.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "resonator/errors.hpp"

namespace resonator {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::complex<double> IncidentWave::evaluate(const Vec3& x, double v) const {
  const double k = omega / v;
  return amplitude * std::exp(std::complex<double>(0.0, k * direction.dot(x)));
}

Eigen::MatrixXd mode_matrix(const std::vector<ModeProfile>& modes) {
  if (modes.empty()) {
    throw DimensionMismatch("empty mode list");
  }
  const Eigen::Index N = modes.front().surface_values.size();
  Eigen::MatrixXd V(N, static_cast<Eigen::Index>(modes.size()));
  for (std::size_t i = 0; i < modes.size(); ++i) {
    V.col(static_cast<Eigen::Index>(i)) = modes[i].surface_values;
  }
  return V;
}

Eigen::VectorXcd incident_projection(const BEMContext& ctx,
                                     const IncidentWave& wave, double v) {
  if (std::abs(wave.direction.norm() - 1.0) > 1e-10) {
    throw InvalidParams("incident direction must be a unit vector");
  }
  if (!(wave.omega >= 0.0)) {
    throw InvalidParams("driving frequency must be nonnegative");
  }
  Eigen::VectorXcd values(static_cast<Eigen::Index>(ctx.panel_count()));
  for (std::size_t p = 0; p < ctx.panel_count(); ++p) {
    values[static_cast<Eigen::Index>(p)] =
        wave.evaluate(ctx.panel_center(p), v);
  }
  return ctx.resonator_integrals(ctx.solve(values).eval());
}

ScatteringSolution solve_coefficients(const std::vector<double>& omegas,
                                      const Eigen::MatrixXd& mode_vectors,
                                      const Eigen::VectorXcd& rhs,
                                      const PhysicalParams& p, double omega) {
  p.validate();
  const Eigen::Index N = mode_vectors.rows();
  if (mode_vectors.cols() != N ||
      omegas.size() != static_cast<std::size_t>(N) || rhs.size() != N) {
    throw DimensionMismatch("mode matrix, frequencies and rhs must all be NxN/N");
  }

  ScatteringSolution sol;
  Eigen::MatrixXd system = mode_vectors;
  for (Eigen::Index i = 0; i < N; ++i) {
    const double wi = omegas[static_cast<std::size_t>(i)];
    const double gap = wi * wi - omega * omega;
    if (std::abs(gap) < 1e-12 * wi * wi) {
      sol.near_resonance = true;
    }
    system.col(i) *= gap;
  }

  const double coef =
      -3.0 * p.delta * p.v_b * p.v_b / (4.0 * kPi * p.R * p.R * p.R);
  const Eigen::VectorXcd b = coef * rhs;

  Eigen::FullPivLU<Eigen::MatrixXd> lu(system);
  if (!lu.isInvertible()) {
    throw SingularModeMatrix("the scaled mode matrix is singular");
  }
  sol.coefficients = lu.solve(b.real().eval()).cast<std::complex<double>>() +
                     std::complex<double>(0.0, 1.0) *
                         lu.solve(b.imag().eval()).cast<std::complex<double>>();

  const double b_norm = b.norm();
  const double err = (system * sol.coefficients - b).norm();
  sol.residual = b_norm > 0.0 ? err / b_norm : err;
  return sol;
}

ScatteredField::ScatteredField(const BEMContext& ctx,
                               Eigen::MatrixXd mode_vectors,
                               Eigen::VectorXcd coefficients,
                               IncidentWave wave, double v)
    : ctx_(ctx),
      modes_(std::move(mode_vectors)),
      coefficients_(std::move(coefficients)),
      wave_(wave),
      v_(v) {
  const Eigen::Index N = static_cast<Eigen::Index>(ctx.arrangement().size());
  if (modes_.rows() != N || coefficients_.size() != modes_.cols()) {
    throw DimensionMismatch("mode matrix or coefficient size mismatch");
  }
  Eigen::VectorXcd values(static_cast<Eigen::Index>(ctx.panel_count()));
  for (std::size_t p = 0; p < ctx.panel_count(); ++p) {
    values[static_cast<Eigen::Index>(p)] = wave_.evaluate(ctx.panel_center(p), v_);
  }
  phi_in_ = ctx.solve(values);

  // sum_i a_i u^i = S_D[sum_i a_i sum_l alpha_l^i psi_l]; fold the double sum
  // into one panel density per real/imaginary part.
  const Eigen::VectorXcd surface = modes_ * coefficients_;
  Eigen::VectorXd density_re =
      Eigen::VectorXd::Zero(static_cast<Eigen::Index>(ctx.panel_count()));
  Eigen::VectorXd density_im = density_re;
  for (Eigen::Index l = 0; l < N; ++l) {
    density_re += surface[l].real() * ctx.charge_basis().col(l);
    density_im += surface[l].imag() * ctx.charge_basis().col(l);
  }
  mode_density_re_ = density_re;
  mode_density_im_ = density_im;
}

std::complex<double> ScatteredField::operator()(const Vec3& x) const {
  ctx_.require_exterior(x);
  const double k = wave_.omega / v_;
  const std::complex<double> incident = wave_.evaluate(x, v_);
  const std::complex<double> compensated =
      ctx_.evaluate_helmholtz(phi_in_, k, x);
  const std::complex<double> modal(ctx_.evaluate_laplace(mode_density_re_, x),
                                   ctx_.evaluate_laplace(mode_density_im_, x));
  return incident - compensated + modal;
}

std::vector<std::complex<double>> field_at(const BEMContext& ctx,
                                           const ScatteringSolution& sol,
                                           const Eigen::MatrixXd& mode_vectors,
                                           const IncidentWave& wave, double v,
                                           const std::vector<Vec3>& points) {
  const ScatteredField field(ctx, mode_vectors, sol.coefficients, wave, v);
  std::vector<std::complex<double>> out;
  out.reserve(points.size());
  for (const Vec3& x : points) {
    out.push_back(field(x));
  }
  return out;
}

}  // namespace resonator
