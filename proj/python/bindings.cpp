// Copyright 2026 The qlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Python bindings for the core estimators, bounds and sweep runner.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qlab/bell.hpp"
#include "qlab/bounds.hpp"
#include "qlab/errors.hpp"
#include "qlab/harness.hpp"
#include "qlab/qpca.hpp"
#include "qlab/shadow.hpp"

namespace py = pybind11;

namespace {

py::object to_python(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

nlohmann::json from_python(const py::object& o) {
  return nlohmann::json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

}  // namespace

PYBIND11_MODULE(_qlab, m) {
  m.doc() = "Sample-complexity experiments for conventional and quantum-enhanced learning";

  static py::exception<qlab::Error> error(m, "QlabError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const qlab::Error& e) {
      error(e.what());
    }
  });

  py::class_<qlab::PauliString>(m, "PauliString")
      .def_static("parse", &qlab::PauliString::parse)
      .def("weight", &qlab::PauliString::weight)
      .def("__len__", &qlab::PauliString::size)
      .def("__str__", &qlab::PauliString::str)
      .def("__repr__", [](const qlab::PauliString& p) { return "PauliString('" + p.str() + "')"; })
      .def("__eq__", [](const qlab::PauliString& a, const qlab::PauliString& b) { return a == b; });

  m.def(
      "quantum_enhanced_estimate",
      [](const std::string& planted, double alpha, std::size_t n_q, const std::string& observable, std::uint64_t seed) {
        qlab::Rng rng(seed);
        const qlab::BellDataset data =
            qlab::run_quantum_enhanced({qlab::PauliString::parse(planted), alpha}, n_q, nullptr, rng);
        return qlab::estimate_a(data, qlab::PauliString::parse(observable));
      },
      py::arg("planted"), py::arg("alpha"), py::arg("n_q"), py::arg("observable"), py::arg("seed") = 0,
      "Bell-pair estimate of |tr(O rho)|^2 from n_q experiments.");
  m.def(
      "shadow_estimate",
      [](const std::string& planted, double alpha, std::size_t n, const std::string& observable, std::uint64_t seed) {
        qlab::Rng rng(seed);
        const qlab::ShadowDataset data =
            qlab::run_conventional({qlab::PauliString::parse(planted), alpha}, n, nullptr, rng);
        return qlab::shadow_estimate(data, qlab::PauliString::parse(observable));
      },
      py::arg("planted"), py::arg("alpha"), py::arg("n_experiments"), py::arg("observable"), py::arg("seed") = 0,
      "Single-copy randomized-Pauli estimate of tr(O rho).");
  m.def(
      "qpca_estimate",
      [](std::size_t n, bool hypothesis_a, std::size_t shots, std::uint64_t seed) {
        qlab::Rng rng(seed);
        const qlab::PcaInstance inst = qlab::make_instance(n, hypothesis_a ? qlab::Hypothesis::A : qlab::Hypothesis::B, rng);
        return py::make_tuple(qlab::two_copy_estimate(inst, shots, rng), qlab::exact_target(inst));
      },
      py::arg("n"), py::arg("hypothesis_a"), py::arg("shots"), py::arg("seed") = 0,
      "Two-copy estimate and exact value of tr(Z_1 rho^2) / tr(rho^2).");

  m.def("lb_predict_abs", &qlab::lb_predict_abs, py::arg("n"), py::arg("delta"));
  m.def("lb_compare_abs", &qlab::lb_compare_abs, py::arg("n"), py::arg("delta"));
  m.def("lb_qpca", &qlab::lb_qpca, py::arg("n"));
  m.def("lb_bounded_memory", &qlab::lb_bounded_memory, py::arg("n"), py::arg("k"), py::arg("p"));

  m.def(
      "run_plan_toml",
      [](const std::string& text) {
        const qlab::ExperimentPlan plan = qlab::parse_plan_toml(text);
        plan.validate();
        qlab::RunRecord record;
        {
          py::gil_scoped_release release;
          record = qlab::run_plan(plan);
        }
        return to_python(record.to_json());
      },
      py::arg("text"), "Runs a TOML plan and returns the run record as a dict.");
  m.def(
      "plan_hash", [](const std::string& text) { return qlab::parse_plan_toml(text).hash(); }, py::arg("text"));
  m.def(
      "summary_csv",
      [](const py::object& record) { return qlab::summary_csv(qlab::RunRecord::from_json(from_python(record))); },
      py::arg("record"));
}
