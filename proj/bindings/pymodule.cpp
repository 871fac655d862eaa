// Python bindings for the SOE construction, model reduction, and fast
// Gauss transform entry points.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "fgt1d/cf.hpp"
#include "fgt1d/contour.hpp"
#include "fgt1d/errors.hpp"
#include "fgt1d/reduction.hpp"
#include "fgt1d/rng.hpp"
#include "fgt1d/soe.hpp"
#include "fgt1d/transform.hpp"

namespace py = pybind11;

namespace {

fgt::SoeApprox contour_soe_py(const std::string& kind, int n,
                              std::optional<double> theta) {
  auto k = fgt::contour_kind_from_name(kind);
  if (!k)
    throw std::domain_error(
        "unknown contour kind '" + kind +
        "' (expected parabolic, hyperbolic, talbot, stabilized-hyperbolic)");
  fgt::ContourSpec spec;
  spec.kind = *k;
  spec.n = n;
  spec.theta_param = theta;
  return fgt::soe_from_contour(spec);
}

std::vector<double> gauss_transform_py(const std::vector<double>& targets,
                                       const std::vector<double>& sources,
                                       const std::vector<double>& strengths,
                                       double delta,
                                       std::optional<fgt::SoeApprox> soe,
                                       int ne, int threads) {
  fgt::TransformRequest req;
  req.targets = targets;
  req.sources = sources;
  req.strengths = strengths;
  req.delta = delta;
  fgt::SoeApprox use;
  if (soe) {
    use = *soe;
    if (use.form == fgt::SoeForm::Full) use = fgt::fold(use);
  } else {
    use = fgt::fold(fgt::cf_soe(2 * ne));
  }
  fgt::TransformPlan plan = fgt::plan(req, use, true);
  fgt::TransformResult res =
      plan.same_points ? fgt::apply_same(plan, req.strengths, threads)
                       : fgt::apply_general(plan, req.strengths, threads);
  return res.potentials;
}

std::vector<double> direct_transform_py(const std::vector<double>& targets,
                                        const std::vector<double>& sources,
                                        const std::vector<double>& strengths,
                                        double delta) {
  fgt::TransformRequest req;
  req.targets = targets;
  req.sources = sources;
  req.strengths = strengths;
  req.delta = delta;
  return fgt::direct(req).potentials;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Sum-of-exponentials approximations of the 1D Gaussian kernel and the "
      "O(N+M) fast Gauss transform built on them";

  py::register_exception<fgt::numerical_error>(m, "NumericalError",
                                               PyExc_ArithmeticError);

  py::enum_<fgt::SoeForm>(m, "SoeForm")
      .value("FULL", fgt::SoeForm::Full)
      .value("FOLDED", fgt::SoeForm::Folded);

  py::class_<fgt::SoeApprox>(m, "SoeApprox")
      .def(py::init<>())
      .def_readwrite("nodes", &fgt::SoeApprox::nodes)
      .def_readwrite("weights", &fgt::SoeApprox::weights)
      .def_readwrite("form", &fgt::SoeApprox::form)
      .def_readwrite("self_conjugate", &fgt::SoeApprox::self_conjugate)
      .def("__len__", &fgt::SoeApprox::size)
      .def("__repr__", [](const fgt::SoeApprox& s) {
        std::ostringstream os;
        os << "SoeApprox(n=" << s.size() << ", form="
           << (s.form == fgt::SoeForm::Full ? "full" : "folded") << ")";
        return os.str();
      });

  py::class_<fgt::ErrorReport>(m, "ErrorReport")
      .def_readonly("n", &fgt::ErrorReport::n)
      .def_readonly("max_abs_error", &fgt::ErrorReport::max_abs_error)
      .def_readonly("argmax_x", &fgt::ErrorReport::argmax_x)
      .def("__repr__", [](const fgt::ErrorReport& r) {
        std::ostringstream os;
        os.precision(17);
        os << "ErrorReport(n=" << r.n << ", max_abs_error=" << r.max_abs_error
           << ", argmax_x=" << r.argmax_x << ")";
        return os.str();
      });

  py::class_<fgt::ReductionReport>(m, "ReductionReport")
      .def_readonly("original_n", &fgt::ReductionReport::original_n)
      .def_readonly("reduced_n", &fgt::ReductionReport::reduced_n)
      .def_readonly("hankel_singular_values",
                    &fgt::ReductionReport::hankel_singular_values)
      .def_readonly("tolerance", &fgt::ReductionReport::tolerance)
      .def("__repr__", [](const fgt::ReductionReport& r) {
        std::ostringstream os;
        os << "ReductionReport(original_n=" << r.original_n
           << ", reduced_n=" << r.reduced_n << ")";
        return os.str();
      });

  m.def("cf_soe", &fgt::cf_soe, py::arg("n"),
        "Near-best SOE of the Gaussian from rational approximation of exp "
        "(n between 2 and 14)");
  m.def("contour_soe", &contour_soe_py, py::arg("kind"), py::arg("n"),
        py::arg("theta") = std::nullopt,
        "SOE from midpoint-rule discretization of an inverse-Laplace contour");
  m.def("evaluate", &fgt::evaluate, py::arg("soe"), py::arg("x"),
        py::arg("delta"), "Evaluate the SOE approximation at x");
  m.def("max_error", &fgt::max_error, py::arg("soe"),
        "Max deviation from the Gaussian over the standard grid (delta = 1)");
  m.def("max_error_extended", &fgt::max_error_extended, py::arg("soe"),
        "Same as max_error but with long-double accumulation");
  m.def("fold", &fgt::fold, py::arg("soe"));
  m.def("unfold", &fgt::unfold, py::arg("soe"));
  m.def("reduce", &fgt::reduce, py::arg("soe"), py::arg("tol"),
        "Balanced truncation: returns (reduced_soe, report)");
  m.def("stabilized_reduced_soe", &fgt::stabilized_reduced_soe,
        py::arg("n") = 64, py::arg("tol") = 1e-15,
        "High-accuracy recipe: stabilized hyperbolic contour + extended-"
        "precision balanced truncation; returns (soe, report)");
  m.def("save_coefficient_table", &fgt::save_coefficient_table,
        py::arg("path"), py::arg("soe"), py::arg("source_tag") = "python");
  m.def("load_coefficient_table", &fgt::load_coefficient_table,
        py::arg("path"));
  m.def("gauss_transform", &gauss_transform_py, py::arg("targets"),
        py::arg("sources"), py::arg("strengths"), py::arg("delta"),
        py::arg("soe") = std::nullopt, py::arg("ne") = 4,
        py::arg("threads") = 1,
        "Fast Gauss transform: u_i = sum_j exp(-(x_i-y_j)^2/(4 delta)) a_j");
  m.def("direct_transform", &direct_transform_py, py::arg("targets"),
        py::arg("sources"), py::arg("strengths"), py::arg("delta"),
        "Quadratic-cost reference evaluation of the same sum");
  m.def("uniform_points", &fgt::rng::uniform_points, py::arg("count"),
        py::arg("seed"), py::arg("stream") = fgt::rng::kStreamSources,
        "Deterministic uniform points on [0,1] (counter-based RNG)");
}
