#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include <string>
#include <vector>

#include "nambu/algebra.hpp"
#include "nambu/brackets.hpp"
#include "nambu/catalog.hpp"
#include "nambu/error.hpp"
#include "nambu/expr.hpp"
#include "nambu/models.hpp"

namespace py = pybind11;
using namespace nambu;

namespace {

PhaseExpr parse_in(int n, const std::string& text) {
  Binding b(n);
  return evaluate_text(text, b);
}

py::object json_to_python(const std::string& text) {
  return py::module_::import("json").attr("loads")(text);
}

}  // namespace

PYBIND11_MODULE(_nambu, m) {
  m.doc() = "Exact star-product, Moyal and Nambu-bracket calculus";

  static py::exception<Error> base(m, "NambuError");
  static py::exception<SyntaxError> syntax(m, "ExprSyntaxError", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const SyntaxError& e) {
      py::object err = py::handle(syntax.ptr())(e.what());
      err.attr("begin") = e.span().begin;
      err.attr("end") = e.span().end;
      PyErr_SetObject(syntax.ptr(), err.ptr());
    } catch (const Error& e) {
      base(e.what());
    }
  });

  py::class_<PhaseExpr>(m, "PhaseExpr")
      .def_property_readonly("n", &PhaseExpr::dim)
      .def("is_zero", &PhaseExpr::is_zero)
      .def("substitute_hbar_zero", &PhaseExpr::substitute_hbar_zero)
      .def("divide_exact_hbar", &PhaseExpr::divide_exact_hbar, py::arg("k"))
      .def("inverse", &PhaseExpr::inverse)
      .def("__pow__", &PhaseExpr::pow)
      .def("__str__", [](const PhaseExpr& e) { return print_canonical(e); })
      .def("__repr__", [](const PhaseExpr& e) { return "PhaseExpr('" + print_canonical(e) + "')"; })
      .def("__eq__", [](const PhaseExpr& a, const PhaseExpr& b) { return a == b; })
      .def("__add__", [](const PhaseExpr& a, const PhaseExpr& b) { return a + b; })
      .def("__sub__", [](const PhaseExpr& a, const PhaseExpr& b) { return a - b; })
      .def("__mul__", [](const PhaseExpr& a, const PhaseExpr& b) { return a * b; })
      .def("__neg__", [](const PhaseExpr& a) { return -a; })
      .def("__hash__", [](const PhaseExpr& e) { return py::hash(py::str(print_canonical(e))); });

  m.def("expr", &parse_in, py::arg("n"), py::arg("text"),
        "Evaluates an expression in n-dimensional phase space, e.g. expr(1, 'x[1]*p[1]').");
  m.def("star", &star);
  m.def("poisson", &poisson);
  m.def("moyal", &moyal);
  m.def("nambu_jacobian", [](const std::vector<PhaseExpr>& e) { return nambu_jacobian(e); });
  m.def("symplectic_trace", [](const std::vector<PhaseExpr>& e, int n) { return symplectic_trace(e, n); });
  m.def(
      "qnb",
      [](const std::vector<PhaseExpr>& e, bool naive) {
        if (e.empty()) throw ArityError("bracket needs at least one entry");
        PhaseAlgebra alg{e.front().dim()};
        return qnb<PhaseAlgebra>(e, alg, naive ? Expansion::Naive : Expansion::SubsetDP).value;
      },
      py::arg("entries"), py::arg("naive") = false);
  m.def(
      "jordan",
      [](const std::vector<PhaseExpr>& e, bool naive) {
        if (e.empty()) throw ArityError("product needs at least one entry");
        PhaseAlgebra alg{e.front().dim()};
        return jordan<PhaseAlgebra>(e, alg, naive ? Expansion::Naive : Expansion::SubsetDP).value;
      },
      py::arg("entries"), py::arg("naive") = false);

  py::class_<Model>(m, "Model")
      .def_readonly("name", &Model::name)
      .def_readonly("n", &Model::n)
      .def_readonly("charges", &Model::charges)
      .def_readonly("conserved", &Model::conserved)
      .def_readonly("h_classical", &Model::h_classical)
      .def_readonly("h_quantum", &Model::h_quantum)
      .def("charge", &Model::charge, py::return_value_policy::copy)
      .def(
          "eval", [](const Model& model, const std::string& text) { return evaluate_text(text, Binding(model)); },
          py::arg("text"));
  m.def("build_model", &build_model, py::arg("name"));
  m.def("model_registry", &model_registry);

  m.def(
      "check",
      [](const std::string& suite, const std::string& id, std::uint64_t seed, int jobs, bool perturb) {
        RunOptions opts;
        opts.suite = suite;
        opts.id_glob = id;
        opts.seed = seed;
        opts.jobs = jobs;
        opts.perturb = perturb;
        std::string text;
        {
          py::gil_scoped_release release;
          text = run_suite(opts).to_json(false);
        }
        return json_to_python(text);
      },
      py::arg("suite") = "all", py::arg("id") = "", py::arg("seed") = 1, py::arg("jobs") = 1,
      py::arg("perturb") = false, "Runs catalog entries and returns the report as a dict (elapsed_ms zeroed).");
  m.def("catalog_ids", [] {
    std::vector<std::string> ids;
    for (const auto& c : catalog()) ids.push_back(c.id);
    return ids;
  });
}
