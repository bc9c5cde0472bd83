#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "turanspan/bounds.hpp"
#include "turanspan/error.hpp"
#include "turanspan/io.hpp"
#include "turanspan/multidim.hpp"
#include "turanspan/sets.hpp"
#include "turanspan/verify.hpp"

namespace py = pybind11;
using namespace turanspan;

namespace {

// Library results travel through their JSON form so Python sees the same
// field names as the CLI.
py::object to_py(const io::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

io::json from_py(const py::object& o) {
  return io::json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

ExpPolynomial1D make_poly(const std::vector<std::pair<Complex, Complex>>& terms) {
  std::vector<ExpTerm> t;
  for (const auto& [c, l] : terms) t.push_back({c, l});
  return ExpPolynomial1D(std::move(t));
}

RealSet1D make_set(std::vector<double> points, const std::vector<std::pair<double, double>>& iv) {
  std::vector<Interval> intervals;
  for (const auto& [a, b] : iv) intervals.push_back({a, b});
  return RealSet1D(std::move(points), std::move(intervals));
}

py::tuple bracket(const Bracket& b) { return py::make_tuple(b.lo, b.hi, b.certified); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Metric spans, frequency bounds and certified checks for exponential polynomials";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<OverflowError>(m, "EvalOverflowError", PyExc_OverflowError);
  py::register_exception<CertificationError>(m, "CertificationError", PyExc_RuntimeError);

  py::class_<ExpPolynomial1D>(m, "ExpPolynomial")
      .def(py::init(&make_poly), py::arg("terms"),
           "Terms as (coefficient, exponent) pairs of complex numbers.")
      .def_property_readonly("degree", &ExpPolynomial1D::degree)
      .def_property_readonly("max_frequency", &ExpPolynomial1D::max_frequency)
      .def_property_readonly("max_abs_exponent", &ExpPolynomial1D::max_abs_exponent)
      .def("is_real", &ExpPolynomial1D::is_real)
      .def("__call__", [](const ExpPolynomial1D& p, double t) { return eval(p, t); })
      .def("abs_sq", [](const ExpPolynomial1D& p, double t) { return abs_sq_expand(p)(t); })
      .def("abs_sq_terms",
           [](const ExpPolynomial1D& p) {
             std::vector<std::tuple<double, double, double, double>> out;
             for (const auto& t : abs_sq_expand(p).terms()) {
               out.emplace_back(t.amplitude, t.rate, t.frequency, t.phase);
             }
             return out;
           })
      .def("derivative_sup_bound", [](const ExpPolynomial1D& p, double a, double b) {
        return derivative_sup_bound(p, {a, b});
      });

  py::class_<RealSet1D>(m, "RealSet")
      .def(py::init(&make_set), py::arg("points") = std::vector<double>{},
           py::arg("intervals") = std::vector<std::pair<double, double>>{})
      .def_property_readonly("lebesgue", &RealSet1D::lebesgue)
      .def_property_readonly("diameter", &RealSet1D::diameter)
      .def("components", [](const RealSet1D& s) {
        std::vector<std::pair<double, double>> out;
        for (const auto& c : s.components()) out.emplace_back(c.lo, c.hi);
        return out;
      });

  m.def("cover_count", &cover_count, py::arg("omega"), py::arg("eps"));
  m.def("cover_thresholds", &cover_thresholds, py::arg("omega"), py::arg("k_max"));
  m.def(
      "metric_span",
      [](const RealSet1D& s, double md, double tol) { return to_py(io::to_json(metric_span(s, md, tol))); },
      py::arg("omega"), py::arg("md"), py::arg("tolerance") = 1e-9);
  m.def("resolution_measure", &resolution_measure, py::arg("omega"), py::arg("eps"));

  m.def("khovanskii_C", [](std::size_t mm) { return py::int_(py::str(khovanskii_C(mm).str())); });
  m.def(
      "frequency_bound",
      [](const std::string& variant, std::size_t mm, double len_b, double freq) {
        return to_py(io::to_json(frequency_bound({parse_variant(variant), mm, len_b, freq})));
      },
      py::arg("variant"), py::arg("m"), py::arg("len_b"), py::arg("freq"));
  m.def("disk_zero_bound", &disk_zero_bound, py::arg("m"), py::arg("lambda_hat"), py::arg("r"));

  m.def(
      "sup_abs",
      [](const ExpPolynomial1D& p, double a, double b, double tol) {
        return bracket(sup_abs(p, {a, b}, tol));
      },
      py::arg("p"), py::arg("a"), py::arg("b"), py::arg("tolerance") = 1e-9);
  m.def(
      "level_crossings",
      [](const ExpPolynomial1D& p, double eta, double a, double b) {
        const auto c = level_crossings(p, eta, {a, b});
        return py::make_tuple(c.count, c.degenerate);
      },
      py::arg("p"), py::arg("eta"), py::arg("a"), py::arg("b"));
  m.def(
      "sublevel_set",
      [](const ExpPolynomial1D& p, double rho, double a, double b) {
        const auto s = sublevel_set(p, rho, {a, b});
        return py::make_tuple(s.set, s.degenerate);
      },
      py::arg("p"), py::arg("rho"), py::arg("a"), py::arg("b"));
  m.def(
      "construct_vanishing",
      [](const std::vector<double>& pts, const std::vector<double>& ex) {
        const auto v = construct_vanishing(pts, ex);
        py::dict d;
        d["coeffs"] = v.coeffs;
        d["residual"] = v.residual;
        d["condition"] = v.condition;
        return d;
      },
      py::arg("points"), py::arg("exponents"));
  m.def(
      "verify_inequality",
      [](const ExpPolynomial1D& p, double a, double b, const RealSet1D& omega,
         const std::string& variant, double tol) {
        return to_py(io::to_json(verify_inequality(p, {a, b}, omega, parse_variant(variant), tol)));
      },
      py::arg("p"), py::arg("a"), py::arg("b"), py::arg("omega"), py::arg("variant") = "nazarov",
      py::arg("tolerance") = 1e-9);
  m.def(
      "ensemble_csv",
      [](const py::dict& config) {
        const EnsembleConfig cfg = io::config_from_json(from_py(config));
        std::ostringstream out;
        write_csv(out, ensemble(cfg));
        return out.str();
      },
      py::arg("config"), "Runs the seeded ensemble; config keys as in the CLI config file.");

  m.def(
      "cover_bounds_nd",
      [](std::size_t n, std::vector<std::vector<double>> pts, double eps) {
        const auto b = cover_bounds_nd(NDPointSet(n, std::move(pts)), eps);
        return py::make_tuple(b.lower, b.upper);
      },
      py::arg("n"), py::arg("points"), py::arg("eps"));
  m.def(
      "metric_span_nd_lower",
      [](std::size_t n, std::vector<std::vector<double>> pts, const Profile& profile,
         const std::vector<double>& eps_grid) {
        return metric_span_nd_lower(NDPointSet(n, std::move(pts)), profile, eps_grid);
      },
      py::arg("n"), py::arg("points"), py::arg("profile"), py::arg("eps_grid"));
}
