#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "jspec/config.hpp"
#include "jspec/oracles.hpp"

namespace py = pybind11;
using namespace jspec;

namespace {

Mode mode_of(bool regularized) { return regularized ? Mode::Regularized : Mode::Generic; }

py::dict point_dict(const Eigenpoint& p) {
  py::dict d;
  d["z"] = p.z;
  d["multiplicity"] = p.multiplicity;
  d["residual"] = p.newton_residual;
  d["method"] = std::string(to_string(p.method));
  d["merged"] = p.merged;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spectra of doubly infinite complex Jacobi operators";

  static py::exception<Error> exc(m, "JspecError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(exc, (std::string(to_string(e.kind())) + ": " + e.what()).c_str());
    }
  });

  py::class_<OperatorSpec>(m, "OperatorSpec")
      .def("lam", &OperatorSpec::lambda, py::arg("n"))
      .def("w", &OperatorSpec::w, py::arg("n"))
      .def("gamma_sq", &OperatorSpec::gamma_sq, py::arg("n"))
      .def_property_readonly("family", &OperatorSpec::family_name);

  m.def("linear_free", [](cplx w) { return make_spec(LinearFree{w}); }, py::arg("w"));
  m.def("bessel_compact", [](cplx a, cplx b) { return make_spec(BesselCompact{a, b}); }, py::arg("alpha"),
        py::arg("beta"));
  m.def("q_geometric", [](cplx q, cplx b) { return make_spec(QGeometric{q, b}); }, py::arg("q"), py::arg("beta"));
  m.def("from_json", [](const std::string& text) { return config::spec_from_json(config::json::parse(text)); },
        py::arg("text"));

  m.def(
      "charfn",
      [](const OperatorSpec& s, cplx z, double tol, bool regularized) {
        EvalOptions o;
        o.tol = tol;
        const auto v = charfn(s, z, o, mode_of(regularized));
        py::dict d;
        d["value"] = v.value;
        d["tail_err"] = v.tail_err;
        d["window"] = v.window;
        d["condition_sum"] = v.condition_sum;
        return d;
      },
      py::arg("spec"), py::arg("z"), py::arg("tol") = 1e-10, py::arg("regularized") = false);

  m.def(
      "spectrum",
      [](const OperatorSpec& s, std::array<double, 4> region, double tol, double origin_radius) {
        SpectrumOptions o;
        o.tol = tol;
        o.origin_radius = origin_radius;
        const auto rep = spectrum(s, Box{region[0], region[1], region[2], region[3]}, o);
        py::list pts;
        for (const auto& p : rep.eigenpoints) pts.append(point_dict(p));
        return pts;
      },
      py::arg("spec"), py::arg("region"), py::arg("tol") = 1e-10, py::arg("origin_radius") = 0.0);

  m.def(
      "eigenvector",
      [](const OperatorSpec& s, cplx z, long lo, long hi, double tol) {
        const Mode md = s.reg_class().kind == RegKind::None ? Mode::Generic : Mode::Regularized;
        return eigenvector(s, z, lo, hi, tol, md).values;
      },
      py::arg("spec"), py::arg("z"), py::arg("lo"), py::arg("hi"), py::arg("tol") = 1e-10);

  m.def(
      "green", [](const OperatorSpec& s, cplx z, long i, long j, double tol) { return green(s, z, i, j, tol); },
      py::arg("spec"), py::arg("z"), py::arg("i"), py::arg("j"), py::arg("tol") = 1e-10);

  m.def(
      "detp_identity_residual",
      [](const OperatorSpec& s, int p, cplx z, long N) { return detp_finite(s, p, z, N).identity_residual; },
      py::arg("spec"), py::arg("p"), py::arg("z"), py::arg("N"));

  m.def("bessel_j", [](cplx nu, cplx x) { return oracle::bessel_j(nu, x); }, py::arg("nu"), py::arg("x"));
  m.def("qpochhammer", [](cplx a, cplx q) { return oracle::qpochhammer(a, q); }, py::arg("a"), py::arg("q"));
}
