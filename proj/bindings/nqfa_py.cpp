// Python bindings for the main operations: quantum-group construction,
// Peter-Weyl data, Fejer reconstruction residuals, and the bimodule / Fubini
// checkers. Thin wrappers over the C++ library; reports cross the boundary
// as plain dicts.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nqfa/suites.hpp"

namespace py = pybind11;
using namespace nqfa;

namespace {

py::object json_to_py(const Json& j) {
  py::module_ pyjson = py::module_::import("json");
  return pyjson.attr("loads")(j.dump());
}

class PyQuantumGroup {
 public:
  PyQuantumGroup(const std::string& group, const std::string& side)
      : q_(build_quantum_group(group, side)) {}
  explicit PyQuantumGroup(FiniteQuantumGroup::Ptr q) : q_(std::move(q)) {}

  Index dim() const { return q_->dim(); }
  std::string name() const { return q_->name(); }
  std::vector<Index> irrep_dims() const {
    std::vector<Index> out;
    for (const auto& ir : q_->peter_weyl()) out.push_back(ir.n);
    return out;
  }
  std::map<std::string, double> residuals() const { return q_->residuals(); }
  double max_residual() const {
    double worst = 0;
    for (const auto& [k, v] : q_->residuals()) worst = std::max(worst, v);
    return worst;
  }
  CMatrix fundamental_w() const { return q_->fundamental_w(); }
  CMatrix haar_gram() const {
    const Index d = q_->dim();
    CMatrix g(d, d);
    for (Index i = 0; i < d; ++i) {
      CVector ei = CVector::Unit(d, i);
      for (Index j = 0; j < d; ++j)
        g(i, j) = q_->haar(q_->mul(q_->star(ei), CVector(CVector::Unit(d, j))));
    }
    return g;
  }
  PyQuantumGroup dual() const { return PyQuantumGroup(q_->dual()); }
  std::string structure_tensors_json() const { return q_->structure_tensors_json(); }
  const FiniteQuantumGroup::Ptr& ptr() const { return q_; }

 private:
  FiniteQuantumGroup::Ptr q_;
};

double fejer_max_residual(const PyQuantumGroup& q, const std::string& action_spec) {
  Action a = build_action(q.ptr(), action_spec);
  CrossedProduct cp(a);
  double worst = 0;
  for (Index mu = 0; mu < cp.dim(); ++mu)
    worst = std::max(worst, cp.fejer_reconstruct(cp.raw(mu)).residual);
  return worst;
}

py::object verify(const std::string& group, const std::string& side, const std::string& suite,
                  std::uint64_t seed, double tol) {
  auto q = build_quantum_group(group, side);
  std::vector<std::string> names;
  if (suite == "all")
    names = {"hopf", "pentagon", "peterweyl", "fejer", "bimodule", "fubini"};
  else
    names = {suite};
  return json_to_py(run_suites(q, names, seed, tol));
}

py::object bimodule_check(const std::string& group, const std::string& side,
                          std::uint64_t seed) {
  auto q = build_quantum_group(group, side);
  return json_to_py(suite_bimodule(q, seed, 1e-8));
}

py::object fubini_check(const std::string& group, const std::string& side, std::uint64_t seed) {
  auto q = build_quantum_group(group, side);
  return json_to_py(suite_fubini(q, seed, 1e-8));
}

}  // namespace

PYBIND11_MODULE(nqfa_py, m) {
  m.doc() = "finite quantum groups, crossed products and Fejer reconstruction";

  py::register_exception<Error>(m, "NqfaError");

  py::class_<PyQuantumGroup>(m, "QuantumGroup")
      .def(py::init<const std::string&, const std::string&>(), py::arg("group"),
           py::arg("side") = "function")
      .def_property_readonly("dim", &PyQuantumGroup::dim)
      .def_property_readonly("name", &PyQuantumGroup::name)
      .def("irrep_dims", &PyQuantumGroup::irrep_dims)
      .def("residuals", &PyQuantumGroup::residuals)
      .def("max_residual", &PyQuantumGroup::max_residual)
      .def("fundamental_w", &PyQuantumGroup::fundamental_w)
      .def("haar_gram", &PyQuantumGroup::haar_gram)
      .def("dual", &PyQuantumGroup::dual)
      .def("structure_tensors_json", &PyQuantumGroup::structure_tensors_json);

  m.def("kron", [](const CMatrix& a, const CMatrix& b) { return kron(a, b); });
  m.def("span_dim", [](const std::vector<CMatrix>& mats) {
    return mats.empty() ? Index(0) : MatSubspace::span(mats).dim();
  });
  m.def("generated_algebra_dim", [](const std::vector<CMatrix>& gens, bool unital) {
    return generated_algebra(gens, unital).dim();
  });
  m.def("fejer_max_residual", &fejer_max_residual, py::arg("q"),
        py::arg("action") = "canonical");
  m.def("verify", &verify, py::arg("group"), py::arg("side") = "function",
        py::arg("suite") = "all", py::arg("seed") = 0, py::arg("tol") = 0.0);
  m.def("bimodule_check", &bimodule_check, py::arg("group"), py::arg("side") = "function",
        py::arg("seed") = 0);
  m.def("fubini_check", &fubini_check, py::arg("group"), py::arg("side") = "function",
        py::arg("seed") = 0);
}
