#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "gravlqu/errors.hpp"
#include "gravlqu/lqu.hpp"
#include "gravlqu/model.hpp"
#include "gravlqu/oracle.hpp"
#include "gravlqu/selfcheck.hpp"
#include "gravlqu/sweep.hpp"
#include "gravlqu/xstate.hpp"

namespace py = pybind11;
using namespace gravlqu;

namespace {

ThermalPoint thermal_point(double temperature) {
  return ThermalPoint::from_temperature(temperature);
}

py::dict row_dict(const SweepRow& r) {
  py::dict d;
  d["omega"] = r.params.omega_gap;
  d["delta"] = r.params.delta;
  d["B"] = r.params.field_uniform;
  d["b"] = r.params.field_inhomo;
  d["T"] = r.temperature;
  d["Z"] = r.z ? py::cast(*r.z) : py::none();
  d["lqu_exact"] = r.lqu_exact;
  d["lqu_paper"] = r.lqu_paper;
  d["branch_exact"] = std::string(to_string(r.branch_exact));
  d["w1"] = r.w1;
  d["w2"] = r.w2;
  d["w3"] = r.w3;
  d["concurrence"] = r.concurrence ? py::cast(*r.concurrence) : py::none();
  d["oracle_min"] = r.oracle_min ? py::cast(*r.oracle_min) : py::none();
  d["purity"] = r.purity;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Thermal local quantum uncertainty of two gravitational cat qubits";

  // Translators run in reverse registration order, so the base goes first.
  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<NotPsdError>(m, "NotPsdError", base.ptr());
  py::register_exception<StructureError>(m, "StructureError", base.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<UsageError>(m, "UsageError", base.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());

  py::class_<XState>(m, "XState")
      .def(py::init<double, double, double, double, Complex, Complex>(), py::arg("d1"),
           py::arg("d2"), py::arg("d3"), py::arg("d4"), py::arg("a14") = Complex{},
           py::arg("a23") = Complex{})
      .def_static("maximally_mixed", &XState::maximally_mixed)
      .def_static("bell_phi_plus", &XState::bell_phi_plus)
      .def_static("pure_00_11", &XState::pure_00_11, py::arg("t"))
      .def_property_readonly("d1", &XState::d1)
      .def_property_readonly("d2", &XState::d2)
      .def_property_readonly("d3", &XState::d3)
      .def_property_readonly("d4", &XState::d4)
      .def_property_readonly("a14", &XState::a14)
      .def_property_readonly("a23", &XState::a23)
      .def("validate",
           [](const XState& s) {
             std::vector<std::string> out;
             for (const Violation& v : validate(s).violations) out.push_back(v.message);
             return out;
           })
      .def("__eq__", [](const XState& a, const XState& b) { return a == b; })
      .def("__repr__", [](const XState& s) {
        std::ostringstream o;
        o << "XState(" << s.d1() << ", " << s.d2() << ", " << s.d3() << ", " << s.d4()
          << ", " << s.a14().real() << "+" << s.a14().imag() << "j, " << s.a23().real()
          << "+" << s.a23().imag() << "j)";
        return o.str();
      });

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init([](double omega, double delta, double B, double b) {
             return ModelParams{omega, delta, B, b};
           }),
           py::arg("omega") = 0.0, py::arg("delta") = 0.0, py::arg("B") = 0.0,
           py::arg("b") = 0.0)
      .def_readwrite("omega", &ModelParams::omega_gap)
      .def_readwrite("delta", &ModelParams::delta)
      .def_readwrite("B", &ModelParams::field_uniform)
      .def_readwrite("b", &ModelParams::field_inhomo);

  py::enum_<Branch>(m, "Branch").value("W1", Branch::W1).value("W3", Branch::W3);

  py::class_<LquResult>(m, "LquResult")
      .def_readonly("value", &LquResult::value)
      .def_readonly("branch", &LquResult::branch)
      .def_property_readonly("w", [](const LquResult& r) {
        return py::make_tuple(r.w.w1, r.w.w2, r.w.w3);
      });

  m.def("thermal_state",
        [](const ModelParams& p, double T) { return thermal_state(p, thermal_point(T)); },
        py::arg("params"), py::arg("T"));
  m.def("ground_state", &ground_state, py::arg("params"));
  m.def("partition_function",
        [](const ModelParams& p, double T) { return partition_function(p, thermal_point(T)); },
        py::arg("params"), py::arg("T"));
  m.def("spectrum", [](const ModelParams& p) {
    const Spectrum s = spectrum(p);
    return py::make_tuple(s.eps, s.theta);
  });

  m.def("lqu", &lqu, py::arg("state"));
  m.def("lqu_paper_mode", &lqu_paper_mode, py::arg("state"));
  m.def("concurrence", &concurrence, py::arg("state"));
  m.def("purity", &purity, py::arg("state"));

  auto bloch = [](const std::array<double, 3>& n) { return BlochVector(n[0], n[1], n[2]); };
  m.def("skew_information",
        [bloch](const XState& s, const std::array<double, 3>& n) {
          return skew_information(s, bloch(n));
        },
        py::arg("state"), py::arg("n"));
  m.def("variance",
        [bloch](const XState& s, const std::array<double, 3>& n) { return variance(s, bloch(n)); },
        py::arg("state"), py::arg("n"));
  m.def("minimize_skew",
        [](const XState& s, int coarse_points, int refine_iters, double refine_tol) {
          const SkewResult r = minimize_skew(s, {coarse_points, refine_iters, refine_tol});
          py::dict d;
          d["min_value"] = r.min_value;
          d["argmin"] = py::make_tuple(r.argmin.x(), r.argmin.y(), r.argmin.z());
          d["evaluations"] = r.evaluations;
          d["lattice_min"] = r.lattice_min;
          return d;
        },
        py::arg("state"), py::arg("coarse_points") = 512, py::arg("refine_iters") = 200,
        py::arg("refine_tol") = 1e-9);
  m.def("w_numeric", [](const XState& s) {
    const WMatrix w = w_numeric(s);
    return py::make_tuple(w.w, w.eigenvalues);
  });

  m.def("run_point",
        [](const ModelParams& p, double T, bool oracle) {
          PointOptions opts;
          opts.with_oracle = oracle;
          return row_dict(run_point(p, T, opts));
        },
        py::arg("params"), py::arg("T"), py::arg("oracle") = false);
  m.def("sweep_csv",
        [](const std::string& var, double start, double stop, int steps,
           const ModelParams& fixed, double T, int workers, bool oracle) {
          SweepSpec spec;
          spec.variable = parse_sweep_variable(var);
          spec.start = start;
          spec.stop = stop;
          spec.steps = steps;
          spec.fixed = fixed;
          spec.temperature = T;
          spec.options.with_oracle = oracle;
          std::vector<SweepRow> rows;
          {
            py::gil_scoped_release release;
            rows = run_sweep(spec, workers);
          }
          return csv_string(rows);
        },
        py::arg("var"), py::arg("start"), py::arg("stop"), py::arg("steps"),
        py::arg("fixed") = ModelParams{0.05, 0.05, 0.5, 0.5}, py::arg("T") = 0.5,
        py::arg("workers") = 1, py::arg("oracle") = false);
  m.def("figure_names", [] {
    std::vector<std::string> out;
    for (FigureName f : all_figures()) out.emplace_back(to_string(f));
    return out;
  });
  m.def("write_figure",
        [](const std::string& name, const std::string& out_dir, int steps, int workers) {
          FigureOverrides ov;
          if (steps > 0) ov.steps = steps;
          const FigureSpec fig = figure_preset(parse_figure_name(name), ov);
          FigureFiles files;
          {
            py::gil_scoped_release release;
            files = write_figure(fig, out_dir, workers);
          }
          return py::make_tuple(files.csv_files, files.script_file);
        },
        py::arg("name"), py::arg("out_dir"), py::arg("steps") = 0, py::arg("workers") = 1);
  m.def("selfcheck", [] {
    SuiteReport report;
    {
      py::gil_scoped_release release;
      report = run_acceptance_suite();
    }
    std::ostringstream o;
    print_report(report, o);
    return py::make_tuple(report.passed(), o.str());
  });

  m.attr("CSV_HEADER") = std::string(kCsvHeader);
#ifdef VERSION_INFO
#define GRAVLQU_STR(x) #x
#define GRAVLQU_XSTR(x) GRAVLQU_STR(x)
  m.attr("__version__") = GRAVLQU_XSTR(VERSION_INFO);
#endif
}
