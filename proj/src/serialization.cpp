#include "resonator/serialization.hpp"

#include <sstream>

#include "resonator/errors.hpp"

namespace resonator {

namespace {

std::string provenance_name(Provenance p) {
  switch (p) {
    case Provenance::Model:
      return "model";
    case Provenance::BEM:
      return "bem";
    case Provenance::UserSupplied:
      return "user";
  }
  return "model";
}

Provenance provenance_from_name(const std::string& name) {
  if (name == "model") return Provenance::Model;
  if (name == "bem") return Provenance::BEM;
  if (name == "user") return Provenance::UserSupplied;
  throw InvalidParams("unknown provenance: " + name);
}

std::string spectrum_kind_name(SpectrumKind kind) {
  switch (kind) {
    case SpectrumKind::Chain:
      return "chain";
    case SpectrumKind::Ring:
      return "ring";
    case SpectrumKind::Grid:
      return "grid";
    case SpectrumKind::NonUniformChain3:
      return "nonuniform_chain3";
  }
  return "chain";
}

}  // namespace

std::string kind_name(Kind kind) {
  switch (kind) {
    case Kind::Chain:
      return "chain";
    case Kind::Ring:
      return "ring";
    case Kind::Grid:
      return "grid";
  }
  return "chain";
}

Kind kind_from_name(const std::string& name) {
  if (name == "chain") return Kind::Chain;
  if (name == "ring") return Kind::Ring;
  if (name == "grid") return Kind::Grid;
  throw InvalidParams("unknown arrangement kind: " + name);
}

json arrangement_to_json(const Arrangement& arr) {
  json j;
  j["kind"] = kind_name(arr.kind());
  if (arr.kind() == Kind::Grid) {
    j["dims"] = {arr.grid_dims()->m, arr.grid_dims()->n};
  } else {
    j["N"] = arr.size();
  }
  j["R"] = arr.radius();
  j["eps"] = arr.gap();
  json centers = json::array();
  for (const Resonator& r : arr.resonators()) {
    centers.push_back({r.center.x(), r.center.y(), r.center.z()});
  }
  j["centers"] = std::move(centers);
  return j;
}

Arrangement arrangement_from_json(const json& j) {
  const Kind kind = kind_from_name(j.at("kind").get<std::string>());
  const double R = j.at("R").get<double>();
  const double eps = j.at("eps").get<double>();
  switch (kind) {
    case Kind::Chain:
      return Arrangement::chain(j.at("N").get<std::size_t>(), R, eps,
                                j.value("allow_small", false));
    case Kind::Ring:
      return Arrangement::ring(j.at("N").get<std::size_t>(), R, eps);
    case Kind::Grid: {
      const auto dims = j.at("dims");
      return Arrangement::grid(dims.at(0).get<std::size_t>(),
                               dims.at(1).get<std::size_t>(), R, eps);
    }
  }
  throw InvalidParams("unknown arrangement kind");
}

json capacitance_to_json(const CapacitanceMatrix& C) {
  json j;
  j["n"] = C.size();
  j["provenance"] = provenance_name(C.provenance);
  json entries = json::array();
  for (Eigen::Index i = 0; i < C.entries.rows(); ++i) {
    for (Eigen::Index k = 0; k < C.entries.cols(); ++k) {
      entries.push_back(C.entries(i, k));
    }
  }
  j["entries"] = std::move(entries);
  return j;
}

CapacitanceMatrix capacitance_from_json(const json& j) {
  const auto n = j.at("n").get<std::size_t>();
  const auto entries = j.at("entries").get<std::vector<double>>();
  if (entries.size() != n * n) {
    throw DimensionMismatch("entries length must be n^2");
  }
  CapacitanceMatrix C;
  C.entries.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      C.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          entries[i * n + k];
    }
  }
  C.provenance = provenance_from_name(j.value("provenance", "user"));
  return C;
}

std::string capacitance_to_csv(const CapacitanceMatrix& C) {
  std::ostringstream out;
  out.precision(17);
  for (std::size_t k = 1; k <= C.size(); ++k) {
    out << (k > 1 ? "," : "") << "c_" << k;
  }
  out << "\n";
  for (Eigen::Index i = 0; i < C.entries.rows(); ++i) {
    for (Eigen::Index k = 0; k < C.entries.cols(); ++k) {
      out << (k > 0 ? "," : "") << C.entries(i, k);
    }
    out << "\n";
  }
  return out.str();
}

json spectrum_to_json(const ClosedFormSpectrum& spec) {
  json j;
  j["kind"] = spectrum_kind_name(spec.kind);
  if (spec.dims) {
    j["dims"] = {spec.dims->m, spec.dims->n};
  } else {
    j["dims"] = {spec.N};
  }
  if (spec.log_units) {
    j["units"] = "|log eps|";  // not divided by rho(eps)
  }
  json groups = json::array();
  for (const SpectralGroup& g : spec.groups) {
    json jg;
    jg["a"] = g.a;
    jg["multiplicity"] = g.multiplicity;
    if (g.theta) {
      jg["theta"] = *g.theta;
    } else {
      jg["theta"] = nullptr;
    }
    groups.push_back(std::move(jg));
  }
  j["groups"] = std::move(groups);
  return j;
}

std::string spectrum_to_csv(const ClosedFormSpectrum& spec) {
  std::ostringstream out;
  out.precision(17);
  out << "a,multiplicity,theta\n";
  for (const SpectralGroup& g : spec.groups) {
    out << g.a << "," << g.multiplicity << ",";
    if (g.theta) {
      out << *g.theta;
    }
    out << "\n";
  }
  return out.str();
}

json frequencies_to_json(const PhysicalParams& p,
                         const std::vector<ResonantFrequency>& freqs) {
  json j;
  j["params"] = {{"delta", p.delta}, {"v", p.v},           {"v_b", p.v_b},
                 {"R", p.R},         {"Lambda", p.Lambda}, {"beta", p.beta}};
  j["eta"] = eta_factor(p);
  json list = json::array();
  for (const ResonantFrequency& f : freqs) {
    json jf;
    jf["i"] = f.index;
    if (f.m_known) {
      jf["re"] = f.re;
    } else {
      jf["re"] = nullptr;
    }
    if (f.im) {
      jf["im"] = *f.im;
    }
    jf["multiplicity"] = f.multiplicity;
    jf["a"] = f.a_value;
    jf["error_order"] = f.error_order;
    list.push_back(std::move(jf));
  }
  j["frequencies"] = std::move(list);
  return j;
}

std::string frequencies_to_csv(const std::vector<ResonantFrequency>& freqs) {
  std::ostringstream out;
  out.precision(17);
  out << "i,re,im,multiplicity,a,error_order\n";
  for (const ResonantFrequency& f : freqs) {
    out << f.index << ",";
    if (f.m_known) {
      out << f.re;
    }
    out << ",";
    if (f.im) {
      out << *f.im;
    }
    out << "," << f.multiplicity << "," << f.a_value << ",\"" << f.error_order
        << "\"\n";
  }
  return out.str();
}

json modes_to_json(const Arrangement& arr,
                   const std::vector<ModeProfile>& profiles) {
  json j;
  j["kind"] = kind_name(arr.kind());
  json list = json::array();
  for (const ModeProfile& m : profiles) {
    json jm;
    jm["i"] = m.index;
    jm["a"] = m.a_value;
    jm["values"] = std::vector<double>(
        m.surface_values.data(), m.surface_values.data() + m.surface_values.size());
    json gaps = json::array();
    for (const auto& [edge, rate] : m.gap_rates) {
      gaps.push_back({{"edge", {edge.first, edge.second}},
                      {"rate", rate == GapRate::Suppressed ? "suppressed" : "full"}});
    }
    jm["gaps"] = std::move(gaps);
    jm["error_order"] = m.error_order;
    list.push_back(std::move(jm));
  }
  j["modes"] = std::move(list);
  return j;
}

std::string modes_to_csv(const std::vector<ModeProfile>& profiles) {
  std::ostringstream out;
  out.precision(17);
  out << "resonator";
  for (const ModeProfile& m : profiles) {
    out << ",u_" << m.index;
  }
  out << "\n";
  if (profiles.empty()) {
    return out.str();
  }
  const Eigen::Index N = profiles.front().surface_values.size();
  for (Eigen::Index l = 0; l < N; ++l) {
    out << (l + 1);
    for (const ModeProfile& m : profiles) {
      out << "," << m.surface_values[l];
    }
    out << "\n";
  }
  return out.str();
}

json scatter_to_json(const ScatteringSolution& sol,
                     const std::vector<Vec3>& points,
                     const std::vector<std::complex<double>>& fields) {
  json j;
  json coeffs = json::array();
  for (Eigen::Index i = 0; i < sol.coefficients.size(); ++i) {
    coeffs.push_back(
        {{"re", sol.coefficients[i].real()}, {"im", sol.coefficients[i].imag()}});
  }
  j["coefficients"] = std::move(coeffs);
  j["residual"] = sol.residual;
  j["near_resonance"] = sol.near_resonance;
  // terms dropped from the leading-order system
  j["error_order"] = "O(delta^(2-beta) + delta^(1-beta) omega^2 + omega^3)";
  json f = json::array();
  for (std::size_t k = 0; k < fields.size(); ++k) {
    f.push_back({{"x", points[k].x()},
                 {"y", points[k].y()},
                 {"z", points[k].z()},
                 {"re", fields[k].real()},
                 {"im", fields[k].imag()}});
  }
  j["fields"] = std::move(f);
  return j;
}

json tables_to_json(const TablesReport& report) {
  json j;
  json counts = json::array();
  for (const TableRow& row : report.counts) {
    counts.push_back({{"arrangement", row.label},
                      {"expected", row.expected},
                      {"computed", row.computed},
                      {"match", row.match}});
  }
  j["counts"] = std::move(counts);
  j["spans"] = report.spans;
  j["pass"] = report.pass;
  if (!report.pass) {
    j["diff"] = report.diff;
  }
  return j;
}

json convergence_to_json(const ConvergenceReport& report) {
  json j;
  j["kind"] = spectrum_kind_name(report.kind);
  j["rho_grid"] = report.rho_grid;
  j["residuals"] = report.residuals;
  j["rate_exponent"] = report.rate_exponent;
  j["rate_constant"] = report.rate_constant;
  j["counts_ok"] = report.counts_ok;
  j["pass"] = report.pass;
  return j;
}

}  // namespace resonator
