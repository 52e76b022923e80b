#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "resonator/bem.hpp"
#include "resonator/capacitance.hpp"
#include "resonator/errors.hpp"
#include "resonator/frequencies.hpp"
#include "resonator/geometry.hpp"
#include "resonator/modes.hpp"
#include "resonator/scattering.hpp"
#include "resonator/serialization.hpp"
#include "resonator/spectra.hpp"
#include "resonator/verification.hpp"

namespace {

using resonator::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitComputation = 2;
constexpr int kExitVerification = 3;

struct CommonOptions {
  std::string config_path;
  std::string kind;
  std::optional<std::size_t> N;
  std::optional<std::size_t> m;
  std::optional<std::size_t> n;
  std::optional<double> R;
  std::optional<double> eps;
  std::optional<double> delta;
  std::optional<double> Lambda;
  std::optional<double> beta;
  std::optional<double> v;
  std::optional<double> vb;
  std::optional<std::size_t> panels;
  std::string cap_source;  // model | bem | file
  std::string cap_path;
  std::string format = "json";
  std::string out_path;
};

void add_common_flags(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--config", opt.config_path, "JSON config file");
  cmd->add_option("--kind", opt.kind, "chain | ring | grid");
  cmd->add_option("--N", opt.N, "resonator count (chain/ring)");
  cmd->add_option("--m", opt.m, "grid rows");
  cmd->add_option("--n", opt.n, "grid columns");
  cmd->add_option("--R", opt.R, "sphere radius");
  cmd->add_option("--eps", opt.eps, "explicit gap width");
  cmd->add_option("--delta", opt.delta, "contrast parameter");
  cmd->add_option("--Lambda", opt.Lambda, "gap schedule constant");
  cmd->add_option("--beta", opt.beta, "gap schedule exponent in (0,1)");
  cmd->add_option("--v", opt.v, "background wave speed");
  cmd->add_option("--vb", opt.vb, "interior wave speed");
  cmd->add_option("--panels", opt.panels, "BEM panels per sphere");
  cmd->add_option("--capacitance", opt.cap_source, "model | bem | file");
  cmd->add_option("--capacitance-file", opt.cap_path,
                  "JSON capacitance matrix (source = file)");
  cmd->add_option("--format", opt.format, "json | csv");
  cmd->add_option("--out", opt.out_path, "output path (default stdout)");
}

/// Flags override config-file values.
json merged_config(const CommonOptions& opt) {
  json cfg = json::object();
  if (!opt.config_path.empty()) {
    std::ifstream in(opt.config_path);
    if (!in) {
      throw resonator::InvalidParams("cannot open config: " + opt.config_path);
    }
    in >> cfg;
  }
  json arr = cfg.value("arrangement", json::object());
  if (!opt.kind.empty()) arr["kind"] = opt.kind;
  if (opt.N) arr["N"] = *opt.N;
  if (opt.m && opt.n) arr["dims"] = {*opt.m, *opt.n};
  if (opt.R) arr["R"] = *opt.R;
  cfg["arrangement"] = arr;

  json gap = cfg.value("gap", json::object());
  if (opt.eps) {
    gap = json{{"eps", *opt.eps}};
  } else if (opt.Lambda || opt.beta) {
    gap.erase("eps");
    if (opt.Lambda) gap["Lambda"] = *opt.Lambda;
    if (opt.beta) gap["beta"] = *opt.beta;
  }
  cfg["gap"] = gap;

  json phys = cfg.value("physics", json::object());
  if (opt.delta) phys["delta"] = *opt.delta;
  if (opt.v) phys["v"] = *opt.v;
  if (opt.vb) phys["v_b"] = *opt.vb;
  cfg["physics"] = phys;

  json cap = cfg.value("capacitance", json::object());
  if (!opt.cap_source.empty()) cap["source"] = opt.cap_source;
  if (opt.panels) cap["panels"] = *opt.panels;
  if (!opt.cap_path.empty()) cap["path"] = opt.cap_path;
  cfg["capacitance"] = cap;
  return cfg;
}

resonator::PhysicalParams params_from(const json& cfg) {
  resonator::PhysicalParams p;
  const json phys = cfg.value("physics", json::object());
  p.delta = phys.value("delta", 1e-3);
  p.v = phys.value("v", 1.0);
  p.v_b = phys.value("v_b", 1.0);
  p.R = cfg.at("arrangement").value("R", 1.0);
  const json gap = cfg.value("gap", json::object());
  p.Lambda = gap.value("Lambda", 1.0);
  p.beta = gap.value("beta", 0.5);
  return p;
}

/// The gap spec is either an explicit eps or the (Lambda, beta) schedule.
double resolve_eps(const json& cfg, const resonator::PhysicalParams& p) {
  const json gap = cfg.value("gap", json::object());
  const bool has_eps = gap.contains("eps");
  const bool has_schedule = gap.contains("Lambda") || gap.contains("beta");
  if (has_eps && has_schedule) {
    throw resonator::InvalidParams(
        "config must give exactly one gap spec (eps or Lambda/beta)");
  }
  if (has_eps) {
    return gap.at("eps").get<double>();
  }
  return resonator::epsilon_of_delta(p).epsilon;
}

bool explicit_gap(const json& cfg) {
  return cfg.value("gap", json::object()).contains("eps");
}

resonator::Arrangement arrangement_from(const json& cfg, double eps) {
  json arr = cfg.at("arrangement");
  arr["eps"] = eps;
  if (!arr.contains("R")) arr["R"] = 1.0;
  return resonator::arrangement_from_json(arr);
}

resonator::CapacitanceMatrix capacitance_from(
    const json& cfg, const resonator::Arrangement& arr) {
  const json cap = cfg.value("capacitance", json::object());
  const std::string source = cap.value("source", "model");
  if (source == "model") {
    std::optional<Eigen::MatrixXd> offsets;
    if (cap.contains("offsets")) {
      const auto flat = cap.at("offsets").get<std::vector<double>>();
      const auto n = static_cast<Eigen::Index>(arr.size());
      if (flat.size() != arr.size() * arr.size()) {
        throw resonator::DimensionMismatch("offsets length must be N^2");
      }
      Eigen::MatrixXd mu(n, n);
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
          mu(i, j) = flat[static_cast<std::size_t>(i * n + j)];
      offsets = mu;
    }
    return resonator::realize(resonator::leading_model(arr, offsets),
                              arr.gap());
  }
  if (source == "bem") {
    return resonator::bem_capacitance(arr,
                                      cap.value("panels", std::size_t{1000}))
        .matrix;
  }
  if (source == "file") {
    std::ifstream in(cap.at("path").get<std::string>());
    if (!in) {
      throw resonator::InvalidParams("cannot open capacitance file");
    }
    json j;
    in >> j;
    return resonator::capacitance_from_json(j);
  }
  throw resonator::InvalidParams("capacitance source must be model|bem|file");
}

void emit(const CommonOptions& opt, const json& j, const std::string& csv) {
  std::string payload = opt.format == "csv" ? csv : j.dump(2) + "\n";
  if (opt.out_path.empty()) {
    std::cout << payload;
  } else {
    std::ofstream out(opt.out_path);
    out << payload;
  }
}

std::uint64_t verification_seed() {
  if (const char* env = std::getenv("RESONATOR_SEED")) {
    return std::strtoull(env, nullptr, 0);
  }
  return resonator::kDefaultSeed;
}

int run_spectrum(const CommonOptions& opt) {
  const json cfg = merged_config(opt);
  const json arr = cfg.at("arrangement");
  const std::string kind = arr.at("kind").get<std::string>();
  resonator::ClosedFormSpectrum spec;
  if (kind == "chain") {
    spec = resonator::chain_eigenvalues(arr.at("N").get<std::size_t>());
  } else if (kind == "ring") {
    spec = resonator::ring_eigenvalues(arr.at("N").get<std::size_t>());
  } else if (kind == "grid") {
    spec = resonator::grid_eigenvalues(arr.at("dims").at(0).get<std::size_t>(),
                                       arr.at("dims").at(1).get<std::size_t>());
  } else {
    throw resonator::InvalidParams("unknown kind: " + kind);
  }
  emit(opt, resonator::spectrum_to_json(spec),
       resonator::spectrum_to_csv(spec));
  return kExitOk;
}

int run_frequencies(const CommonOptions& opt) {
  const json cfg = merged_config(opt);
  const resonator::PhysicalParams p = params_from(cfg);
  const double eps = resolve_eps(cfg, p);
  const resonator::Arrangement arr = arrangement_from(cfg, eps);
  const json cap = cfg.value("capacitance", json::object());
  resonator::MSource m_source = resonator::MSource::unavailable();
  if (cap.value("source", "") == "bem") {
    m_source = resonator::MSource::bem(cap.value("panels", std::size_t{1000}));
  } else if (cap.contains("M")) {
    m_source = resonator::MSource::user(cap.at("M").get<double>());
  }
  // a pinned gap drives |log eps| directly; otherwise the schedule does
  std::optional<double> eps_override;
  if (explicit_gap(cfg)) {
    eps_override = eps;
  }
  const auto freqs =
      resonator::resonant_frequencies(arr, p, m_source, eps_override);
  emit(opt, resonator::frequencies_to_json(p, freqs),
       resonator::frequencies_to_csv(freqs));
  return kExitOk;
}

int run_modes(const CommonOptions& opt) {
  const json cfg = merged_config(opt);
  const resonator::PhysicalParams p = params_from(cfg);
  const double eps = resolve_eps(cfg, p);
  const resonator::Arrangement arr = arrangement_from(cfg, eps);
  std::optional<resonator::CapacitanceMatrix> C;
  if (arr.kind() == resonator::Kind::Ring) {
    C = capacitance_from(cfg, arr);
  }
  const auto profiles = resonator::mode_profiles(arr, C);
  emit(opt, resonator::modes_to_json(arr, profiles),
       resonator::modes_to_csv(profiles));
  return kExitOk;
}

int run_capacitance(const CommonOptions& opt) {
  const json cfg = merged_config(opt);
  const resonator::PhysicalParams p = params_from(cfg);
  const double eps = resolve_eps(cfg, p);
  const resonator::Arrangement arr = arrangement_from(cfg, eps);
  const resonator::CapacitanceMatrix C = capacitance_from(cfg, arr);
  emit(opt, resonator::capacitance_to_json(C),
       resonator::capacitance_to_csv(C));
  return kExitOk;
}

int run_scatter(const CommonOptions& opt, double omega,
                const std::string& points_path) {
  const json cfg = merged_config(opt);
  const resonator::PhysicalParams p = params_from(cfg);
  const double eps = resolve_eps(cfg, p);
  const resonator::Arrangement arr = arrangement_from(cfg, eps);

  std::vector<resonator::Vec3> points;
  if (!points_path.empty()) {
    std::ifstream in(points_path);
    if (!in) {
      throw resonator::InvalidParams("cannot open points file: " +
                                     points_path);
    }
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line.find_first_of("0123456789-+.") != 0) {
        continue;  // header or blank
      }
      std::istringstream row(line);
      std::string cell;
      resonator::Vec3 x;
      for (int k = 0; k < 3; ++k) {
        if (!std::getline(row, cell, ',')) {
          throw resonator::InvalidParams("points file rows need x,y,z");
        }
        x[k] = std::stod(cell);
      }
      points.push_back(x);
    }
  }

  const json cap = cfg.value("capacitance", json::object());
  const std::size_t panels = cap.value("panels", std::size_t{1000});
  const auto ctx = resonator::BEMContext::assemble(arr, panels);

  std::optional<resonator::CapacitanceMatrix> C;
  if (arr.kind() == resonator::Kind::Ring) {
    C = resonator::bem_capacitance(ctx).matrix;
  }
  const auto profiles = resonator::mode_profiles(arr, C);
  const Eigen::MatrixXd V = resonator::mode_matrix(profiles);

  std::optional<double> eps_override;
  if (explicit_gap(cfg)) {
    eps_override = eps;
  }
  const auto freqs = resonator::resonant_frequencies(
      arr, p, resonator::MSource::bem(panels), eps_override);
  const auto omegas = resonator::expand_frequencies(freqs);

  resonator::IncidentWave wave;
  wave.omega = omega;
  const auto rhs = resonator::incident_projection(ctx, wave, p.v);
  const auto sol = resonator::solve_coefficients(omegas, V, rhs, p, omega);
  const auto fields = resonator::field_at(ctx, sol, V, wave, p.v, points);
  emit(opt, resonator::scatter_to_json(sol, points, fields), "");
  return kExitOk;
}

int run_verify(const CommonOptions& opt) {
  const std::uint64_t seed = verification_seed();
  json out;
  out["seed"] = seed;
  bool pass = true;

  json campaigns = json::array();
  const std::vector<double> rho_grid = {1e2, 1e3, 1e4};
  struct Campaign {
    resonator::SpectrumKind kind;
    std::size_t a, b;
    const char* label;
  };
  for (const Campaign& c :
       {Campaign{resonator::SpectrumKind::Chain, 8, 0, "chain N=8"},
        Campaign{resonator::SpectrumKind::Ring, 5, 0, "ring N=5"},
        Campaign{resonator::SpectrumKind::Grid, 2, 3, "grid 2x3"}}) {
    const auto report =
        resonator::asymptotic_convergence(c.kind, c.a, c.b, rho_grid, seed);
    json jc = resonator::convergence_to_json(report);
    jc["label"] = c.label;
    pass = pass && report.pass;
    campaigns.push_back(std::move(jc));
    std::cout << (report.pass ? "PASS " : "FAIL ") << c.label
              << "  rate exponent " << report.rate_exponent << "\n";
  }
  out["campaigns"] = std::move(campaigns);

  const auto tables = resonator::reference_tables();
  out["tables"] = resonator::tables_to_json(tables);
  pass = pass && tables.pass;
  std::cout << (tables.pass ? "PASS " : "FAIL ") << "frequency count tables\n";

  out["pass"] = pass;
  emit(opt, out, "");
  return pass ? kExitOk : kExitVerification;
}

int run_tables(const CommonOptions& opt) {
  const auto report = resonator::reference_tables();
  std::cout << (report.pass ? "PASS" : "FAIL") << " table reproduction\n";
  emit(opt, resonator::tables_to_json(report), "");
  return report.pass ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subwavelength resonant frequencies of sphere arrays"};
  app.require_subcommand(1);

  CommonOptions opt;
  double omega = 0.0;
  std::string points_path;

  CLI::App* spectrum = app.add_subcommand("spectrum", "closed-form spectrum");
  add_common_flags(spectrum, opt);
  CLI::App* frequencies =
      app.add_subcommand("frequencies", "resonant frequencies");
  add_common_flags(frequencies, opt);
  CLI::App* modes = app.add_subcommand("modes", "resonant-mode surface values");
  add_common_flags(modes, opt);
  CLI::App* capacitance =
      app.add_subcommand("capacitance", "capacitance matrix");
  add_common_flags(capacitance, opt);
  CLI::App* scatter = app.add_subcommand("scatter", "leading-order scattering");
  add_common_flags(scatter, opt);
  scatter->add_option("--omega", omega, "driving frequency")->required();
  scatter->add_option("--points", points_path,
                      "CSV of evaluation points x,y,z");
  CLI::App* verify =
      app.add_subcommand("verify", "oracle verification campaigns");
  add_common_flags(verify, opt);
  CLI::App* tables = app.add_subcommand("tables", "frequency count tables");
  add_common_flags(tables, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (spectrum->parsed()) return run_spectrum(opt);
    if (frequencies->parsed()) return run_frequencies(opt);
    if (modes->parsed()) return run_modes(opt);
    if (capacitance->parsed()) return run_capacitance(opt);
    if (scatter->parsed()) return run_scatter(opt, omega, points_path);
    if (verify->parsed()) return run_verify(opt);
    if (tables->parsed()) return run_tables(opt);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitComputation;
  }
  return kExitUsage;
}
