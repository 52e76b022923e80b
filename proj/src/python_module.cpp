#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

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

namespace py = pybind11;
using namespace resonator;

namespace {

py::dict spectrum_dict(const ClosedFormSpectrum& spec) {
  py::dict d;
  d["kind"] = spectrum_to_json(spec)["kind"].get<std::string>();
  d["N"] = spec.N;
  py::list groups;
  for (const auto& g : spec.groups) {
    py::dict jg;
    jg["a"] = g.a;
    jg["multiplicity"] = g.multiplicity;
    if (g.theta) {
      jg["theta"] = *g.theta;
    } else {
      jg["theta"] = py::none();
    }
    groups.append(jg);
  }
  d["groups"] = groups;
  d["values"] = spec.expanded();
  return d;
}

SpectrumKind spectrum_kind_from(const std::string& name) {
  if (name == "chain") return SpectrumKind::Chain;
  if (name == "ring") return SpectrumKind::Ring;
  if (name == "grid") return SpectrumKind::Grid;
  throw InvalidParams("unknown spectrum kind: " + name);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Subwavelength resonant frequencies and modes of sphere arrays";

  py::register_exception<InvalidDims>(m, "InvalidDims", PyExc_ValueError);
  py::register_exception<InvalidGap>(m, "InvalidGap", PyExc_ValueError);
  py::register_exception<InvalidCutoff>(m, "InvalidCutoff", PyExc_ValueError);
  py::register_exception<CountMismatch>(m, "CountMismatch", PyExc_RuntimeError);
  py::register_exception<TableMismatch>(m, "TableMismatch", PyExc_RuntimeError);

  py::enum_<Kind>(m, "Kind")
      .value("Chain", Kind::Chain)
      .value("Ring", Kind::Ring)
      .value("Grid", Kind::Grid);

  py::class_<Arrangement>(m, "Arrangement")
      .def_static("chain", &Arrangement::chain, py::arg("N"), py::arg("R"),
                  py::arg("eps"), py::arg("allow_small") = false)
      .def_static("ring", &Arrangement::ring, py::arg("N"), py::arg("R"),
                  py::arg("eps"))
      .def_static("grid", &Arrangement::grid, py::arg("m"), py::arg("n"),
                  py::arg("R"), py::arg("eps"))
      .def_property_readonly("kind", &Arrangement::kind)
      .def("__len__", &Arrangement::size)
      .def_property_readonly("R", &Arrangement::radius)
      .def_property_readonly("eps", &Arrangement::gap)
      .def("centers",
           [](const Arrangement& arr) {
             Eigen::MatrixXd c(static_cast<Eigen::Index>(arr.size()), 3);
             for (std::size_t i = 0; i < arr.size(); ++i) {
               c.row(static_cast<Eigen::Index>(i)) = arr.center(i + 1);
             }
             return c;
           })
      .def("to_json", [](const Arrangement& arr) {
        return arrangement_to_json(arr).dump();
      });

  m.def("tangency_edges", [](const Arrangement& arr) {
    return tangency_graph(arr).edges;
  });
  m.def(
      "gap_regions",
      [](const Arrangement& arr, std::optional<double> r) {
        const auto regions = r ? gap_regions(arr, *r) : gap_regions(arr);
        py::list out;
        for (const auto& g : regions) {
          py::dict d;
          d["pair"] = g.pair;
          d["center"] = std::vector<double>{g.center.x(), g.center.y(),
                                            g.center.z()};
          d["r"] = g.r;
          out.append(d);
        }
        return out;
      },
      py::arg("arr"), py::arg("r") = py::none());

  m.def("chain_eigenvalues",
        [](std::size_t N) { return spectrum_dict(chain_eigenvalues(N)); });
  m.def("ring_eigenvalues",
        [](std::size_t N) { return spectrum_dict(ring_eigenvalues(N)); });
  m.def("grid_eigenvalues", [](std::size_t m_, std::size_t n) {
    return spectrum_dict(grid_eigenvalues(m_, n));
  });
  m.def("nonuniform_chain3", [](double eps1, double eps2) {
    const auto result = nonuniform_chain3(eps1, eps2);
    py::dict d = spectrum_dict(result.spectrum);
    d["units"] = "|log eps|";
    d["ratio_warning"] = result.ratio_warning;
    return d;
  });
  m.def("chain_eigenvector", &chain_eigenvector, py::arg("N"), py::arg("i"));
  m.def("ring_eigenbasis", [](std::size_t N, std::size_t t) {
    return ring_eigenbasis(N, t).vectors;
  });
  m.def("charpoly", [](const std::string& kind, std::vector<std::size_t> dims,
                       double a) {
    switch (spectrum_kind_from(kind)) {
      case SpectrumKind::Chain:
        return chain_charpoly(dims.at(0), a);
      case SpectrumKind::Ring:
        return ring_charpoly(dims.at(0), a);
      default:
        return grid_charpoly(dims.at(0), dims.at(1), a);
    }
  });
  m.def("dense_eigen", [](const Eigen::MatrixXd& M) {
    const auto pairs = dense_eigen(M);
    std::vector<double> values;
    Eigen::MatrixXd vectors(M.rows(), M.cols());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      values.push_back(pairs[i].value);
      vectors.col(static_cast<Eigen::Index>(i)) = pairs[i].vector;
    }
    return py::make_tuple(values, vectors);
  });
  m.def("path_laplacian", &path_laplacian);
  m.def("cycle_laplacian", &cycle_laplacian);
  m.def("grid_laplacian", &grid_laplacian);

  py::class_<CapacitanceModel>(m, "CapacitanceModel")
      .def_property_readonly(
          "kappa", [](const CapacitanceModel& mdl) { return mdl.kappa; })
      .def_property_readonly("mu",
                             [](const CapacitanceModel& mdl) { return mdl.mu; })
      .def_readonly("length_scale", &CapacitanceModel::length_scale);

  py::class_<CapacitanceMatrix>(m, "CapacitanceMatrix")
      .def_property_readonly(
          "entries", [](const CapacitanceMatrix& C) { return C.entries; })
      .def_property_readonly("provenance",
                             [](const CapacitanceMatrix& C) {
                               return capacitance_to_json(C)["provenance"]
                                   .get<std::string>();
                             })
      .def("to_json",
           [](const CapacitanceMatrix& C) { return capacitance_to_json(C).dump(); })
      .def("to_csv", &capacitance_to_csv);

  m.def(
      "leading_model",
      [](const Arrangement& arr, std::optional<Eigen::MatrixXd> offsets) {
        return leading_model(arr, offsets);
      },
      py::arg("arr"), py::arg("offsets") = py::none());
  m.def("realize", &realize, py::arg("model"), py::arg("eps"));
  m.def("rho_factor", &rho_factor, py::arg("eps"), py::arg("length_scale") = 1.0);
  m.def(
      "generalized",
      [](const CapacitanceMatrix& C, double delta, double v_b,
         const std::vector<double>& volumes) {
        return generalized(C, delta, v_b, volumes).entries;
      },
      py::arg("C"), py::arg("delta"), py::arg("v_b"), py::arg("volumes"));
  m.def("average_capacity", &average_capacity);
  m.def("sphere_volume", &sphere_volume);

  m.def(
      "bem_capacitance",
      [](const Arrangement& arr, std::size_t panels) {
        const auto result = bem_capacitance(arr, panels);
        py::dict d;
        d["matrix"] = result.matrix;
        d["asymmetry"] = result.asymmetry;
        d["resolution_warning"] = result.resolution_warning;
        return d;
      },
      py::arg("arr"), py::arg("panels_per_sphere") = 1000);
  m.def("two_sphere_series", &two_sphere_series, py::arg("R"), py::arg("d"));

  py::class_<PhysicalParams>(m, "PhysicalParams")
      .def(py::init([](double delta, double v, double v_b, double R,
                       double Lambda, double beta) {
             PhysicalParams p{delta, v, v_b, R, Lambda, beta};
             p.validate();
             return p;
           }),
           py::arg("delta") = 1e-3, py::arg("v") = 1.0, py::arg("v_b") = 1.0,
           py::arg("R") = 1.0, py::arg("Lambda") = 1.0, py::arg("beta") = 0.5)
      .def_readonly("delta", &PhysicalParams::delta)
      .def_readonly("v", &PhysicalParams::v)
      .def_readonly("v_b", &PhysicalParams::v_b)
      .def_readonly("R", &PhysicalParams::R)
      .def_readonly("Lambda", &PhysicalParams::Lambda)
      .def_readonly("beta", &PhysicalParams::beta);

  m.def("epsilon_of_delta", [](const PhysicalParams& p) {
    const auto g = epsilon_of_delta(p);
    py::dict d;
    d["epsilon"] = g.epsilon;
    d["log_epsilon"] = g.log_epsilon;
    d["delta_log_eps"] = g.delta_log_eps;
    d["underflow"] = g.underflow;
    return d;
  });
  m.def("eta_factor", &eta_factor);
  m.def(
      "resonant_frequencies",
      [](const Arrangement& arr, const PhysicalParams& p,
         std::optional<double> M, std::optional<std::size_t> bem_panels,
         std::optional<double> eps_override) {
        MSource src = MSource::unavailable();
        if (M) {
          src = MSource::user(*M);
        } else if (bem_panels) {
          src = MSource::bem(*bem_panels);
        }
        const auto freqs = resonant_frequencies(arr, p, src, eps_override);
        py::list out;
        for (const auto& f : freqs) {
          py::dict d;
          d["i"] = f.index;
          if (f.m_known) {
            d["re"] = f.re;
          } else {
            d["re"] = py::none();
          }
          d["multiplicity"] = f.multiplicity;
          d["a"] = f.a_value;
          d["error_order"] = f.error_order;
          out.append(d);
        }
        return out;
      },
      py::arg("arr"), py::arg("params"), py::arg("M") = py::none(),
      py::arg("bem_panels") = py::none(), py::arg("eps") = py::none());
  m.def("span_and_count", [](const Arrangement& arr, const PhysicalParams& p) {
    const auto sc = span_and_count(arr, p);
    py::dict d;
    d["eta"] = sc.eta;
    d["span"] = sc.span;
    d["count"] = sc.count;
    return d;
  });
  m.def("imaginary_parts",
        [](const CapacitanceMatrix& C, const Eigen::MatrixXd& vectors,
           const PhysicalParams& p, const std::vector<double>& volumes) {
          std::vector<EigenPair> pairs;
          for (Eigen::Index i = 0; i < vectors.cols(); ++i) {
            pairs.push_back({0.0, vectors.col(i)});
          }
          return imaginary_parts(C, pairs, p, volumes);
        });

  m.def(
      "mode_profiles",
      [](const Arrangement& arr, std::optional<CapacitanceMatrix> C) {
        const auto profiles = mode_profiles(arr, C);
        py::list out;
        for (const auto& mp : profiles) {
          py::dict d;
          d["i"] = mp.index;
          d["a"] = mp.a_value;
          d["values"] = mp.surface_values;
          py::list gaps;
          for (const auto& [edge, rate] : mp.gap_rates) {
            py::dict g;
            g["edge"] = edge;
            g["rate"] = rate == GapRate::Suppressed ? "suppressed" : "full";
            gaps.append(g);
          }
          d["gaps"] = gaps;
          out.append(d);
        }
        return out;
      },
      py::arg("arr"), py::arg("C") = py::none());
  m.def(
      "resolve_ring_mixing",
      [](const CapacitanceMatrix& C, std::size_t N, std::size_t t) {
        const auto mixing = resolve_ring_mixing(C, N, t);
        py::list out;
        for (const auto& mix : mixing) {
          py::dict d;
          d["k1"] = mix.k1;
          d["k2"] = mix.k2;
          d["residual"] = mix.residual;
          out.append(d);
        }
        return out;
      },
      py::arg("C"), py::arg("N"), py::arg("t"));

  m.def(
      "asymptotic_convergence",
      [](const std::string& kind, std::vector<std::size_t> dims,
         const std::vector<double>& rho_grid, std::uint64_t seed) {
        const auto report = asymptotic_convergence(
            spectrum_kind_from(kind), dims.at(0),
            dims.size() > 1 ? dims.at(1) : 0, rho_grid, seed);
        py::dict d;
        d["rho_grid"] = report.rho_grid;
        d["residuals"] = report.residuals;
        d["rate_exponent"] = report.rate_exponent;
        d["rate_constant"] = report.rate_constant;
        d["counts_ok"] = report.counts_ok;
        d["pass"] = report.pass;
        return d;
      },
      py::arg("kind"), py::arg("dims"), py::arg("rho_grid"),
      py::arg("seed") = kDefaultSeed);
  m.def("reference_tables", []() {
    return py::module_::import("json").attr("loads")(
        tables_to_json(reference_tables()).dump());
  });

  py::class_<BEMContext>(m, "BEMContext")
      .def_static("assemble", &BEMContext::assemble, py::arg("arr"),
                  py::arg("panels_per_sphere"))
      .def_property_readonly("panel_count", &BEMContext::panel_count)
      .def("single_layer", &BEMContext::single_layer,
           py::return_value_policy::reference_internal)
      .def("capacitance", [](const BEMContext& ctx) {
        return bem_capacitance(ctx).matrix;
      });

  py::class_<IncidentWave>(m, "IncidentWave")
      .def(py::init([](std::complex<double> amplitude, Vec3 direction,
                       double omega) {
             return IncidentWave{amplitude, direction, omega};
           }),
           py::arg("amplitude") = std::complex<double>(1.0, 0.0),
           py::arg("direction") = Vec3(1.0, 0.0, 0.0), py::arg("omega") = 0.0);

  m.def("incident_projection", &incident_projection, py::arg("ctx"),
        py::arg("wave"), py::arg("v"));
  m.def(
      "solve_coefficients",
      [](const std::vector<double>& omegas, const Eigen::MatrixXd& modes,
         const Eigen::VectorXcd& rhs, const PhysicalParams& p, double omega) {
        const auto sol = solve_coefficients(omegas, modes, rhs, p, omega);
        py::dict d;
        d["coefficients"] = sol.coefficients;
        d["residual"] = sol.residual;
        d["near_resonance"] = sol.near_resonance;
        return d;
      },
      py::arg("omegas"), py::arg("mode_vectors"), py::arg("rhs"),
      py::arg("params"), py::arg("omega"));
  m.def(
      "field_at",
      [](const BEMContext& ctx, const Eigen::VectorXcd& coefficients,
         const Eigen::MatrixXd& modes, const IncidentWave& wave, double v,
         const std::vector<Vec3>& points) {
        ScatteringSolution sol;
        sol.coefficients = coefficients;
        return field_at(ctx, sol, modes, wave, v, points);
      },
      py::arg("ctx"), py::arg("coefficients"), py::arg("mode_vectors"),
      py::arg("wave"), py::arg("v"), py::arg("points"));

  m.attr("DEFAULT_SEED") = kDefaultSeed;
}
