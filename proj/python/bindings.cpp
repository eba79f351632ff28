#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hamfam/report.hpp"

namespace py = pybind11;
using namespace hamfam;

namespace {

NumericParams bind_params(const HamSystem& sys, const std::map<std::string, complex>& params) {
  return NumericParams::from_named(*sys.vars, params);
}

IntegrationSettings settings(const std::string& method, double h, double t0, double t1, double tol) {
  IntegrationSettings s;
  s.method = parse_method(method);
  s.h = h;
  s.t0 = t0;
  s.t1 = t1;
  s.rtol = s.atol = tol;
  return s;
}

py::list verify(const std::string& family, int branch, const std::string& mutate) {
  py::list out;
  for (const auto& r : verify_family(FamilySpec::parse(family), branch, Mutation::parse(mutate))) {
    py::dict d;
    d["family"] = r.family;
    d["check"] = r.name;
    d["pass"] = r.pass;
    d["residual"] = r.residual;
    out.append(d);
  }
  return out;
}

py::dict integrate_py(const std::string& family, const std::map<std::string, complex>& params, complex q0,
                      complex p0, const std::string& method, double h, double t0, double t1, double tol) {
  HamSystem sys = make_family(FamilySpec::parse(family));
  Trajectory tr = integrate(sys, bind_params(sys, params), q0, p0, settings(method, h, t0, t1, tol));
  py::dict d;
  d["t"] = tr.times;
  d["q"] = tr.q;
  d["p"] = tr.p;
  d["H"] = tr.H;
  d["drift_trace"] = tr.drift_trace;
  d["drift"] = tr.drift;
  d["termination"] = to_string(tr.termination);
  d["message"] = tr.message;
  return d;
}

py::dict convergence_py(const std::string& family, const std::map<std::string, complex>& params, complex q0,
                        complex p0, const std::vector<double>& steps, double t0, double t1) {
  HamSystem sys = make_family(FamilySpec::parse(family));
  ConvergenceSweep sw = drift_convergence(sys, bind_params(sys, params), q0, p0, settings("rk4", steps.at(0), t0, t1, 1e-9),
                                          steps);
  std::vector<std::string> term;
  for (auto t : sw.terminations) term.push_back(to_string(t));
  py::dict d;
  d["steps"] = sw.steps;
  d["drifts"] = sw.drifts;
  d["terminations"] = term;
  d["order"] = sw.order;
  return d;
}

py::dict apply_map_py(const std::string& family, const std::string& map_name, const std::map<std::string, complex>& params,
                      complex q, complex p, complex t, int branch, int power) {
  HamSystem sys = make_family(FamilySpec::parse(family));
  BirationalMap m = hamfam::power(map_by_name(map_name, sys, branch), power);
  NumericParams prm = bind_params(sys, params);
  MappedPoint img = apply_numeric(m, q, p, t, prm.values);
  std::map<std::string, complex> named;
  auto idx = sys.vars->parameters();
  for (std::size_t i = 0; i < idx.size(); ++i) named[sys.vars->name(idx[i])] = img.params[i];
  py::dict d;
  d["q"] = img.q;
  d["p"] = img.p;
  d["t"] = img.t;
  d["params"] = named;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Core bindings for hamfam";

  py::register_exception<AlgebraError>(m, "AlgebraError", PyExc_ValueError);
  py::register_exception<IntegrationError>(m, "IntegrationError", PyExc_RuntimeError);

  m.def(
      "hamiltonian", [](const std::string& family) { return make_family(FamilySpec::parse(family)).H.str(); },
      py::arg("family"), "Canonical text of the family's Hamiltonian.");
  m.def(
      "second_order_form",
      [](const std::string& family) { return second_order_form(make_family(FamilySpec::parse(family))).to_laurent().str(); },
      py::arg("family"), "Right-hand side of q'' in terms of q, qdot, t and the parameters.");
  m.def("verify", &verify, py::arg("family"), py::arg("branch") = 1, py::arg("mutate") = "",
        "Run every exact certificate for a family; returns one dict per check.");
  m.def("integrate", &integrate_py, py::arg("family"), py::arg("params"), py::arg("q0"), py::arg("p0"),
        py::arg("method") = "rk4", py::arg("h") = 1e-3, py::arg("t0") = 0.0, py::arg("t1") = 1.0,
        py::arg("tol") = 1e-9, "Integrate Hamilton's equations.");
  m.def("drift_convergence", &convergence_py, py::arg("family"), py::arg("params"), py::arg("q0"), py::arg("p0"),
        py::arg("steps"), py::arg("t0") = 0.0, py::arg("t1") = 1.0, "RK4 drift sweep over step sizes.");
  m.def("apply_map", &apply_map_py, py::arg("family"), py::arg("map"), py::arg("params"), py::arg("q"), py::arg("p"),
        py::arg("t") = complex(0.0), py::arg("branch") = 1, py::arg("power") = 1,
        "Apply a named symmetry (optionally iterated) to a numeric point.");
}
