#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "resonator/capacitance.hpp"
#include "resonator/geometry.hpp"
#include "resonator/spectra.hpp"

namespace resonator {

/// Contrast, wave speeds, radius, and the gap-schedule constants of
/// eps = exp(-Lambda / delta^(1-beta)).
struct PhysicalParams {
  double delta = 1e-3;
  double v = 1.0;
  double v_b = 1.0;
  double R = 1.0;
  double Lambda = 1.0;
  double beta = 0.5;

  void validate() const;  // throws InvalidParams
};

struct GapSchedule {
  double epsilon = 0.0;        // 0 when underflowed; use log_epsilon then
  double log_epsilon = 0.0;    // log eps = -Lambda / delta^(1-beta), exact path
  double delta_log_eps = 0.0;  // delta * |log eps| = Lambda * delta^beta
  bool underflow = false;
};

GapSchedule epsilon_of_delta(const PhysicalParams& p);

/// eta = sqrt(3 Lambda v_b^2 / (4 R^3)) * delta^(beta/2); the common factor
/// of every omega_i with i >= 2.
double eta_factor(const PhysicalParams& p);

struct ResonantFrequency {
  std::size_t index = 1;  // first mode index of the group, 1-based
  double re = 0.0;
  std::optional<double> im;  // <= 0 when present
  std::size_t multiplicity = 1;
  double a_value = 0.0;
  std::string error_order;
  bool m_known = true;  // false when omega_1 awaits an average capacity M
};

struct MSource {
  enum class Type { BEM, UserValue, Unavailable };
  Type type = Type::Unavailable;
  double value = 0.0;          // used by UserValue
  std::size_t panels = 1000;   // used by BEM

  static MSource bem(std::size_t panels = 1000) {
    return {Type::BEM, 0.0, panels};
  }
  static MSource user(double M) { return {Type::UserValue, M, 0}; }
  static MSource unavailable() { return {}; }
};

/// omega_1 = sqrt(3 v_b^2 M delta / (4 pi R^3)); for i >= 2,
/// omega_i = sqrt(3 v_b^2 a_i delta |log eps| / (4 R^3)). The gap factor
/// comes from the schedule's algebraic path delta*|log eps| = Lambda
/// delta^beta, or from eps_override when the gap is pinned explicitly.
/// Entries are grouped by multiplicity and sorted ascending.
std::vector<ResonantFrequency> resonant_frequencies(
    const Arrangement& arr, const PhysicalParams& p,
    const MSource& m_source = MSource::unavailable(),
    std::optional<double> eps_override = std::nullopt);

/// One omega per mode index (multiplicity expanded), length N.
std::vector<double> expand_frequencies(const std::vector<ResonantFrequency>& freqs);

/// Leading imaginary parts, one per eigenpair:
/// Im omega = -delta (v_b^2 / (8 pi v)) (1^T C alpha)^2 / sum_l |D_l| alpha_l^2.
Eigen::VectorXd imaginary_parts(const CapacitanceMatrix& C,
                                const std::vector<EigenPair>& pairs,
                                const PhysicalParams& p,
                                const std::vector<double>& volumes);

struct SpanCount {
  double eta = 0.0;
  std::string span;        // "(0, 2*eta)", "(0, 2*eta]", "(0, 2*sqrt(2)*eta)"
  std::size_t count = 0;   // distinct leading-order frequencies
};

SpanCount span_and_count(const Arrangement& arr, const PhysicalParams& p);

/// Spectrum matching the arrangement kind.
ClosedFormSpectrum arrangement_spectrum(const Arrangement& arr);

}  // namespace resonator
