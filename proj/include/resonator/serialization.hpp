#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "resonator/capacitance.hpp"
#include "resonator/frequencies.hpp"
#include "resonator/geometry.hpp"
#include "resonator/modes.hpp"
#include "resonator/scattering.hpp"
#include "resonator/spectra.hpp"
#include "resonator/verification.hpp"

namespace resonator {

using json = nlohmann::json;

std::string kind_name(Kind kind);
Kind kind_from_name(const std::string& name);

/// {kind, N | dims, R, eps, centers}. Centers are recomputed on input and
/// always present on output.
json arrangement_to_json(const Arrangement& arr);
Arrangement arrangement_from_json(const json& j);

/// {n, provenance, entries} with entries in row-major order.
json capacitance_to_json(const CapacitanceMatrix& C);
CapacitanceMatrix capacitance_from_json(const json& j);
std::string capacitance_to_csv(const CapacitanceMatrix& C);

/// {kind, dims, groups: [{a, multiplicity, theta}]}.
json spectrum_to_json(const ClosedFormSpectrum& spec);
std::string spectrum_to_csv(const ClosedFormSpectrum& spec);

/// {params, eta, frequencies: [{i, re, im?, multiplicity, a, error_order}]}.
json frequencies_to_json(const PhysicalParams& p,
                         const std::vector<ResonantFrequency>& freqs);
std::string frequencies_to_csv(const std::vector<ResonantFrequency>& freqs);

/// {kind, modes: [{i, values, gaps: [{edge, rate}]}]}.
json modes_to_json(const Arrangement& arr,
                   const std::vector<ModeProfile>& profiles);
/// One row per resonator, one column per mode.
std::string modes_to_csv(const std::vector<ModeProfile>& profiles);

/// {coefficients: [{re, im}], residual, near_resonance, fields: [...]}.
json scatter_to_json(const ScatteringSolution& sol,
                     const std::vector<Vec3>& points,
                     const std::vector<std::complex<double>>& fields);

json tables_to_json(const TablesReport& report);
json convergence_to_json(const ConvergenceReport& report);

}  // namespace resonator
