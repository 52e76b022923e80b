#include "resonator/modes.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "resonator/errors.hpp"
#include "resonator/spectra.hpp"

namespace resonator {

namespace {

const char* kModeErrorOrder = "O(omega_i + |log eps|^-1)";

Eigen::MatrixXd ring_basis_matrix(std::size_t N, std::size_t t) {
  const RingBasis basis = ring_eigenbasis(N, t);
  Eigen::MatrixXd B(static_cast<Eigen::Index>(N),
                    static_cast<Eigen::Index>(basis.vectors.size()));
  for (std::size_t c = 0; c < basis.vectors.size(); ++c) {
    B.col(static_cast<Eigen::Index>(c)) = basis.vectors[c];
  }
  return B;
}

std::map<Edge, GapRate> classify(const Arrangement& arr,
                                 const Eigen::VectorXd& values, double tol) {
  std::map<Edge, GapRate> rates;
  for (const Edge& e : tangency_graph(arr).edges) {
    const double diff =
        std::abs(values[static_cast<Eigen::Index>(e.first) - 1] -
                 values[static_cast<Eigen::Index>(e.second) - 1]);
    rates[e] = diff <= tol ? GapRate::Suppressed : GapRate::Full;
  }
  return rates;
}

double suppression_tol(bool oracle_resolved, double eps, double R) {
  if (!oracle_resolved) {
    return 1e-9;
  }
  const double rho = rho_factor(eps, R);
  return std::max(1e-8, 10.0 / rho);
}

}  // namespace

Eigen::VectorXd normalize_profile(const Eigen::VectorXd& v) {
  const double peak = v.cwiseAbs().maxCoeff();
  if (peak == 0.0) {
    throw InvalidParams("cannot normalize the zero vector");
  }
  Eigen::VectorXd out = v / peak;
  for (Eigen::Index l = 0; l < out.size(); ++l) {
    if (std::abs(out[l]) > 1e-12) {
      if (out[l] < 0.0) {
        out = -out;
      }
      break;
    }
  }
  return out;
}

std::vector<ModeProfile> mode_profiles(
    const Arrangement& arr, const std::optional<CapacitanceMatrix>& C) {
  const std::size_t N = arr.size();
  const double tol_cf = 1e-9;
  std::vector<ModeProfile> profiles;
  profiles.reserve(N);

  auto push = [&](std::size_t index, double a, Eigen::VectorXd values,
                  bool oracle) {
    ModeProfile p;
    p.index = index;
    p.a_value = a;
    p.surface_values = normalize_profile(values);
    p.error_order = kModeErrorOrder;
    p.oracle_resolved = oracle;
    const double tol = suppression_tol(oracle, arr.gap(), arr.radius());
    p.gap_rates = classify(arr, p.surface_values, tol);
    profiles.push_back(std::move(p));
  };

  switch (arr.kind()) {
    case Kind::Chain: {
      const auto spec = chain_eigenvalues(N);
      for (std::size_t i = 1; i <= N; ++i) {
        push(i, spec.groups[i - 1].a, chain_eigenvector(N, i), false);
      }
      break;
    }
    case Kind::Ring: {
      const auto spec = ring_eigenvalues(N);
      std::size_t index = 1;
      for (std::size_t t = 1; t <= spec.groups.size(); ++t) {
        const SpectralGroup& g = spec.groups[t - 1];
        if (g.multiplicity == 1) {
          push(index, g.a, ring_eigenbasis(N, t).vectors[0], false);
        } else {
          if (!C) {
            throw MissingCapacitance(
                "ring interior modes need a capacitance matrix to resolve "
                "the mixing constants");
          }
          const Eigen::MatrixXd B = ring_basis_matrix(N, t);
          const auto mixing = resolve_ring_mixing(*C, N, t);
          for (std::size_t r = 0; r < g.multiplicity; ++r) {
            const Eigen::VectorXd combo =
                mixing[r].k1 * B.col(0) + mixing[r].k2 * B.col(1);
            push(index + r, g.a, combo, true);
          }
        }
        index += g.multiplicity;
      }
      break;
    }
    case Kind::Grid: {
      const std::size_t m = arr.grid_dims()->m;
      const std::size_t n = arr.grid_dims()->n;
      const auto spec = grid_eigenvalues(m, n);
      const auto am = chain_eigenvalues(m).expanded();
      const auto an = chain_eigenvalues(n).expanded();
      std::vector<EigenPair> pairs;  // dense fallback for degenerate groups
      std::size_t index = 1;
      for (const SpectralGroup& g : spec.groups) {
        if (g.multiplicity == 1) {
          // Unique (gamma, alpha) pair: tensor product of the chain modes
          // under the row-major labeling i = (gamma-1) n + alpha.
          Eigen::VectorXd v(static_cast<Eigen::Index>(N));
          bool found = false;
          for (std::size_t gam = 1; gam <= m && !found; ++gam) {
            for (std::size_t alp = 1; alp <= n && !found; ++alp) {
              if (std::abs(am[gam - 1] + an[alp - 1] - g.a) <= tol_cf) {
                const Eigen::VectorXd um = chain_eigenvector(m, gam);
                const Eigen::VectorXd un = chain_eigenvector(n, alp);
                for (std::size_t row = 1; row <= m; ++row) {
                  for (std::size_t col = 1; col <= n; ++col) {
                    v[static_cast<Eigen::Index>((row - 1) * n + col - 1)] =
                        um[static_cast<Eigen::Index>(row - 1)] *
                        un[static_cast<Eigen::Index>(col - 1)];
                  }
                }
                found = true;
              }
            }
          }
          push(index, g.a, v, false);
        } else {
          if (pairs.empty()) {
            pairs = dense_eigen(grid_laplacian(m, n));
          }
          for (std::size_t r = 0; r < g.multiplicity; ++r) {
            push(index + r, g.a, pairs[index - 1 + r].vector, true);
          }
        }
        index += g.multiplicity;
      }
      break;
    }
  }
  return profiles;
}

std::map<Edge, GapRate> gap_blowup(const Arrangement& arr,
                                   const ModeProfile& profile, double eps) {
  if (profile.surface_values.size() != static_cast<Eigen::Index>(arr.size())) {
    throw DimensionMismatch("profile does not belong to this arrangement");
  }
  const double tol =
      suppression_tol(profile.oracle_resolved, eps, arr.radius());
  return classify(arr, profile.surface_values, tol);
}

std::vector<RingMixing> resolve_ring_mixing(
    const CapacitanceMatrix& C, std::size_t N, std::size_t t,
    std::optional<double> residual_tol) {
  const auto spec = ring_eigenvalues(N);
  if (t < 2 || t > spec.groups.size() || spec.groups[t - 1].multiplicity != 2) {
    throw IndexOutOfRange("t must index an interior (double) ring group");
  }
  if (C.size() != N) {
    throw DimensionMismatch("capacitance matrix size does not match N");
  }
  const auto pairs = dense_eigen(C.entries);
  const Eigen::MatrixXd B = ring_basis_matrix(N, t);
  const Eigen::MatrixXd gram = B.transpose() * B;

  // Group t occupies eigenvalue positions 2t-2 and 2t-1 (1-based ascending).
  std::vector<RingMixing> out;
  for (std::size_t r = 0; r < 2; ++r) {
    const Eigen::VectorXd& v = pairs[2 * t - 3 + r].vector;
    const Eigen::Vector2d k = gram.ldlt().solve(B.transpose() * v);
    const double residual = (v - B * k).norm();
    if (residual_tol && residual > *residual_tol) {
      throw ResidualTooLarge("projection remainder " + std::to_string(residual) +
                             " exceeds " + std::to_string(*residual_tol));
    }
    out.push_back({k[0], k[1], residual});
  }
  return out;
}

}  // namespace resonator
