#include <sstream>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "slicecert/errors.hpp"
#include "slicecert/system_io.hpp"

namespace py = pybind11;
using namespace slicecert;

namespace {

py::object to_python(const nlohmann::json& doc) { return py::module_::import("json").attr("loads")(doc.dump()); }

Vec point_or_default(const SystemDefinition& def, const std::optional<Vec>& point) {
  if (!point) return def.point;
  if (point->size() != def.system.dim()) throw DimensionMismatch("point has the wrong dimension");
  return *point;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Slice-Hessian stability certificates for relative equilibria";

  py::register_exception<Error>(m, "Error");
  py::register_exception<ValidationError>(m, "ValidationError", m.attr("Error"));
  py::register_exception<ParseError>(m, "ParseError", m.attr("Error"));
  py::register_exception<NotRelativeEquilibrium>(m, "NotRelativeEquilibrium", m.attr("Error"));

  py::class_<SystemDefinition>(m, "System")
      .def_property_readonly("dim", [](const SystemDefinition& d) { return d.system.dim(); })
      .def_property_readonly("algebra_dim", [](const SystemDefinition& d) { return d.system.algebra_dim(); })
      .def_property_readonly("point", [](const SystemDefinition& d) { return d.point; })
      .def("to_dict", [](const SystemDefinition& d) { return to_python(to_json(d)); })
      .def("hamiltonian", [](const SystemDefinition& d, const Vec& x) { return d.system.hamiltonian().eval(x); })
      .def("hamiltonian_gradient",
           [](const SystemDefinition& d, const Vec& x) { return d.system.hamiltonian().gradient(x); })
      .def("hamiltonian_hessian",
           [](const SystemDefinition& d, const Vec& x) { return d.system.hamiltonian().hessian(x); })
      .def("momentum", [](const SystemDefinition& d, const Vec& x) { return d.system.momentum()(x).coords; })
      .def(
          "analyze",
          [](const SystemDefinition& d, std::optional<Vec> point) {
            return to_python(to_json(analyze(d.system, point_or_default(d, point))));
          },
          py::arg("point") = py::none())
      .def(
          "certify",
          [](const SystemDefinition& d, std::optional<Vec> point, std::optional<Vec> velocity, std::uint64_t seed) {
            SearchOptions options;
            options.seed = seed;
            std::optional<AlgebraVector> fixed;
            if (velocity) fixed = AlgebraVector(*velocity);
            return to_python(to_json(certify(d.system, point_or_default(d, point), options, fixed)));
          },
          py::arg("point") = py::none(), py::arg("velocity") = py::none(), py::arg("seed") = 42)
      .def(
          "restricted_hessian",
          [](const SystemDefinition& d, const Vec& xi, std::optional<Vec> point) {
            Vec p = point_or_default(d, point);
            return restricted_hessian(d.system, p, AlgebraVector(xi), witt_artin(d.system, p));
          },
          py::arg("xi"), py::arg("point") = py::none())
      .def(
          "probe",
          [](const SystemDefinition& d, std::optional<Vec> point, double epsilon, double horizon, int samples,
             double dt, std::uint64_t seed) {
            Vec p = point_or_default(d, point);
            ProbeOptions options;
            options.epsilon = epsilon;
            options.horizon = horizon;
            options.samples = samples;
            options.dt = dt;
            options.seed = seed;
            Subalgebra k = momentum_isotropy_algebra(d.system.algebra(), d.system.momentum()(p));
            ProbeReport report;
            {
              py::gil_scoped_release release;
              report = stability_probe(d.system, p, k, options);
            }
            return to_python(to_json(report));
          },
          py::arg("point") = py::none(), py::arg("epsilon") = 1e-3, py::arg("horizon") = 100.0,
          py::arg("samples") = 16, py::arg("dt") = 1e-2, py::arg("seed") = 42);

  m.def("load_system", [](const std::string& path) { return load_system(path); }, py::arg("path"));
  m.def("parse_system", [](const std::string& text) { return parse_system_text(text); }, py::arg("text"));
  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "slicecert");
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs a CLI command in-process; returns (exit_code, stdout, stderr).");
}
