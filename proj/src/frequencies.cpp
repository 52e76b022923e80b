#include "resonator/frequencies.hpp"

#include <cfloat>
#include <cmath>
#include <numbers>

#include "resonator/bem.hpp"
#include "resonator/errors.hpp"

namespace resonator {

namespace {

constexpr double kPi = std::numbers::pi;

const char* kOmegaErrorOrder = "O(sqrt(delta/|log eps|) + delta)";
const char* kOmega1ErrorOrder = "1 + o(1)";

}  // namespace

void PhysicalParams::validate() const {
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw InvalidParams("delta must lie in (0, 1)");
  }
  if (!(v > 0.0) || !(v_b > 0.0) || !(R > 0.0) || !(Lambda > 0.0)) {
    throw InvalidParams("v, v_b, R, Lambda must be positive");
  }
  if (!(beta > 0.0) || !(beta < 1.0)) {
    throw InvalidParams("beta must lie in the open interval (0, 1)");
  }
}

GapSchedule epsilon_of_delta(const PhysicalParams& p) {
  p.validate();
  GapSchedule g;
  g.log_epsilon = -p.Lambda / std::pow(p.delta, 1.0 - p.beta);
  g.delta_log_eps = p.Lambda * std::pow(p.delta, p.beta);
  g.epsilon = std::exp(g.log_epsilon);
  if (g.epsilon < DBL_MIN) {
    g.underflow = true;
    g.epsilon = 0.0;
  }
  return g;
}

double eta_factor(const PhysicalParams& p) {
  p.validate();
  return std::sqrt(3.0 * p.Lambda * p.v_b * p.v_b / (4.0 * p.R * p.R * p.R)) *
         std::pow(p.delta, 0.5 * p.beta);
}

ClosedFormSpectrum arrangement_spectrum(const Arrangement& arr) {
  switch (arr.kind()) {
    case Kind::Chain:
      return chain_eigenvalues(arr.size());
    case Kind::Ring:
      return ring_eigenvalues(arr.size());
    case Kind::Grid:
      return grid_eigenvalues(arr.grid_dims()->m, arr.grid_dims()->n);
  }
  throw InvalidDims("unknown arrangement kind");
}

std::vector<ResonantFrequency> resonant_frequencies(
    const Arrangement& arr, const PhysicalParams& p, const MSource& m_source,
    std::optional<double> eps_override) {
  p.validate();
  GapSchedule gap = epsilon_of_delta(p);
  if (eps_override) {
    if (!(*eps_override > 0.0) || !(*eps_override < 1.0)) {
      throw InvalidGap("explicit eps must lie in (0, 1)");
    }
    gap.epsilon = *eps_override;
    gap.log_epsilon = std::log(*eps_override);
    gap.delta_log_eps = p.delta * std::abs(gap.log_epsilon);
    gap.underflow = false;
  }
  const ClosedFormSpectrum spec = arrangement_spectrum(arr);
  const double R3 = p.R * p.R * p.R;

  std::vector<ResonantFrequency> out;
  std::size_t index = 1;
  for (const SpectralGroup& g : spec.groups) {
    ResonantFrequency f;
    f.index = index;
    f.multiplicity = g.multiplicity;
    f.a_value = g.a;
    if (g.a == 0.0) {
      // The in-phase mode needs the average capacity M.
      f.error_order = kOmega1ErrorOrder;
      switch (m_source.type) {
        case MSource::Type::UserValue:
          f.re = std::sqrt(3.0 * p.v_b * p.v_b * m_source.value * p.delta /
                           (4.0 * kPi * R3));
          break;
        case MSource::Type::BEM: {
          if (gap.underflow) {
            throw InvalidGap("gap schedule underflows; BEM M needs a finite eps");
          }
          const auto bem = bem_capacitance(arr, m_source.panels);
          f.re = std::sqrt(3.0 * p.v_b * p.v_b * average_capacity(bem.matrix) *
                           p.delta / (4.0 * kPi * R3));
          break;
        }
        case MSource::Type::Unavailable:
          f.re = 0.0;
          f.m_known = false;
          f.error_order = "sqrt(3 v_b^2 M delta / (4 pi R^3)), M unavailable";
          break;
      }
    } else {
      // omega_i = sqrt(3 v_b^2 a delta |log eps| / (4 R^3)) = sqrt(a) * eta,
      // with delta |log eps| taken from the algebraic Lambda delta^beta path.
      f.re = std::sqrt(3.0 * p.v_b * p.v_b * g.a * gap.delta_log_eps /
                       (4.0 * R3));
      f.error_order = kOmegaErrorOrder;
    }
    out.push_back(std::move(f));
    index += g.multiplicity;
  }
  return out;
}

std::vector<double> expand_frequencies(
    const std::vector<ResonantFrequency>& freqs) {
  std::vector<double> out;
  for (const auto& f : freqs) {
    out.insert(out.end(), f.multiplicity, f.re);
  }
  return out;
}

Eigen::VectorXd imaginary_parts(const CapacitanceMatrix& C,
                                const std::vector<EigenPair>& pairs,
                                const PhysicalParams& p,
                                const std::vector<double>& volumes) {
  p.validate();
  const Eigen::Index N = C.entries.rows();
  if (volumes.size() != static_cast<std::size_t>(N)) {
    throw DimensionMismatch("volume list size does not match N");
  }
  // (alpha^T C J C alpha) = (1^T C alpha)^2; the row-sum route keeps the
  // cancellation exact when C has vanishing row sums.
  const Eigen::VectorXd row_sums = C.entries.rowwise().sum();
  const double coef = p.delta * p.v_b * p.v_b / (8.0 * kPi * p.v);

  Eigen::VectorXd out(static_cast<Eigen::Index>(pairs.size()));
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const Eigen::VectorXd& alpha = pairs[k].vector;
    if (alpha.size() != N) {
      throw DimensionMismatch("eigenvector size does not match C");
    }
    const double s = row_sums.dot(alpha);
    double norm_D = 0.0;
    for (Eigen::Index l = 0; l < N; ++l) {
      norm_D += volumes[static_cast<std::size_t>(l)] * alpha[l] * alpha[l];
    }
    out[static_cast<Eigen::Index>(k)] = -coef * s * s / norm_D;
  }
  return out;
}

SpanCount span_and_count(const Arrangement& arr, const PhysicalParams& p) {
  SpanCount sc;
  sc.eta = eta_factor(p);
  const std::size_t N = arr.size();
  switch (arr.kind()) {
    case Kind::Chain:
      sc.span = "(0, 2*eta)";
      sc.count = N;
      break;
    case Kind::Ring:
      sc.span = "(0, 2*eta]";
      sc.count = N % 2 == 1 ? (N + 1) / 2 : (N + 2) / 2;
      break;
    case Kind::Grid:
      sc.span = "(0, 2*sqrt(2)*eta)";
      sc.count = grid_eigenvalues(arr.grid_dims()->m, arr.grid_dims()->n)
                     .groups.size();
      break;
  }
  return sc;
}

}  // namespace resonator
