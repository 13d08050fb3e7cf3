#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "walshfejer/experiments.hpp"

namespace py = pybind11;
namespace wf = walshfejer;

namespace {

py::object to_fraction(const wf::Rational& q) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(q.get_str());
}

wf::Rational from_python(const py::handle& obj) { return wf::parse_rational(py::str(obj).cast<std::string>()); }

py::list fractions(std::span<const wf::Rational> values) {
  py::list out;
  for (const auto& v : values) out.append(to_fraction(v));
  return out;
}

wf::StepFunction make_step(int resolution, const py::iterable& values) {
  std::vector<wf::Rational> v;
  for (auto item : values) v.push_back(from_python(item));
  return wf::StepFunction(resolution, std::move(v));
}

py::tuple quasinorm(const wf::QuasinormValue& q) {
  return py::make_tuple(q.exact ? to_fraction(*q.exact) : py::none(), static_cast<double>(q.value));
}

py::dict report_dict(const wf::ExperimentReport& r) {
  py::dict d;
  d["id"] = r.id;
  d["mode"] = r.mode;
  d["params"] = r.params;
  d["columns"] = r.columns;
  d["rows"] = r.rows;
  d["summary"] = r.summary;
  py::list checks;
  for (const auto& c : r.checks) checks.append(py::make_tuple(c.name, c.pass, c.detail));
  d["checks"] = checks;
  d["passed"] = r.all_passed();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Walsh-Paley analysis on the dyadic group with exact rational arithmetic";

  py::class_<wf::StepFunction>(m, "StepFunction")
      .def(py::init(&make_step), py::arg("resolution"), py::arg("values"))
      .def_property_readonly("resolution", &wf::StepFunction::resolution)
      .def_property_readonly("values", [](const wf::StepFunction& f) { return fractions(f.values()); })
      .def("__len__", &wf::StepFunction::size)
      .def("__getitem__", [](const wf::StepFunction& f, wf::Index b) {
        if (b >= f.size()) throw py::index_error();
        return to_fraction(f[b]);
      })
      .def("refine", &wf::StepFunction::refine)
      .def("__eq__", [](const wf::StepFunction& a, const wf::StepFunction& b) { return a == b; })
      .def("__add__", [](const wf::StepFunction& a, const wf::StepFunction& b) { return a + b; })
      .def("__sub__", [](const wf::StepFunction& a, const wf::StepFunction& b) { return a - b; })
      .def("__repr__", [](const wf::StepFunction& f) {
        return "StepFunction(resolution=" + std::to_string(f.resolution()) + ")";
      });

  m.def("order", &wf::order);
  m.def("variation", &wf::variation);
  m.def("in_A02", &wf::in_A02);
  m.def("prefix_part", &wf::prefix_part);
  m.def("block_decomposition", [](wf::Index n) {
    std::vector<std::pair<int, int>> out;
    for (const auto& b : wf::block_decomposition(n)) out.emplace_back(b.low, b.high);
    return out;
  });

  m.def("walsh", &wf::walsh, py::arg("n"), py::arg("resolution"));
  m.def("rademacher", &wf::rademacher, py::arg("k"), py::arg("resolution"));
  m.def("fwht", [](const wf::StepFunction& f) { return fractions(wf::fwht(f).coeffs()); });
  m.def("synthesize", [](int resolution, const py::iterable& coeffs) {
    std::vector<wf::Rational> v;
    for (auto c : coeffs) v.push_back(from_python(c));
    return wf::synthesize(resolution, v);
  });
  m.def("dirichlet", py::overload_cast<wf::Index, int>(&wf::dirichlet), py::arg("n"), py::arg("resolution"));
  m.def("dirichlet", py::overload_cast<wf::Index>(&wf::dirichlet), py::arg("n"));
  m.def("fejer_kernel", py::overload_cast<wf::Index, int>(&wf::fejer_kernel), py::arg("n"), py::arg("resolution"));
  m.def("fejer_kernel", py::overload_cast<wf::Index>(&wf::fejer_kernel), py::arg("n"));
  m.def("partial_sum", &wf::partial_sum);
  m.def("fejer_mean", &wf::fejer_mean);
  m.def("conditional_expectation", &wf::conditional_expectation);
  m.def("dyadic_convolve", &wf::dyadic_convolve);
  m.def("kernel_decomposition_residual", &wf::kernel_decomposition_residual);

  m.def("integrate", [](const wf::StepFunction& f) { return to_fraction(wf::integrate(f)); });
  m.def("lp_integral", [](const wf::StepFunction& f, const py::object& p) { return quasinorm(wf::lp_integral(f, from_python(p))); });
  m.def("lp_quasinorm", [](const wf::StepFunction& f, const py::object& p) { return quasinorm(wf::lp_quasinorm(f, from_python(p))); });
  m.def("weak_lp_quasinorm",
        [](const wf::StepFunction& f, const py::object& p) { return quasinorm(wf::weak_lp_quasinorm(f, from_python(p))); });

  m.def("maximal_function", [](const wf::StepFunction& f) { return wf::maximal_function(wf::DyadicMartingale(f)); });
  m.def("hp_quasinorm", [](const wf::StepFunction& f, const py::object& p) {
    return quasinorm(wf::hp_quasinorm(wf::DyadicMartingale(f), from_python(p)));
  });
  m.def("haar_atom", [](int depth, const py::object& p) { return wf::haar_atom(depth, from_python(p)).fn; });
  m.def("build_theorem2_martingale", [](int mm, int resolution) {
    return wf::build_theorem2_martingale(mm, resolution).terminal();
  });
  m.def("sigma_identity_16b_residual", &wf::sigma_identity_16b_residual);

  m.def("run_theorem2", [](int m_min, int m_max) { return report_dict(wf::run_theorem2({m_min, m_max, wf::NumericMode::exact})); },
        py::arg("m_min") = 4, py::arg("m_max") = 10);
  m.def("run_fine_average", [](wf::Index n_max) { return report_dict(wf::run_fine_average(n_max)); }, py::arg("n_max"));
  m.def("run_theorem1a", [](int depth, const py::object& p, wf::Index n_max) {
    wf::Theorem1aOptions o;
    o.p = from_python(p);
    o.n_max = n_max;
    o.atom_depth = depth;
    return report_dict(wf::run_theorem1a(wf::DyadicMartingale(wf::haar_atom(depth, o.p).fn), o));
  }, py::arg("atom_depth"), py::arg("p"), py::arg("n_max"));

#define WF_STR2(x) #x
#define WF_STR(x) WF_STR2(x)
  m.attr("__version__") = WF_STR(VERSION_INFO);
}
