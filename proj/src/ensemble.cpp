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

#include "qlab/ensemble.hpp"

#include <cmath>

#include "qlab/errors.hpp"

namespace qlab {

namespace {
constexpr std::size_t kDenseQubitCap = 10;
}

void EnsembleSpec::validate() const {
  if (pauli.is_identity()) throw spec_error("ensemble Pauli must not be the identity");
  if (!(std::abs(alpha) < 1.0)) throw spec_error("ensemble alpha must satisfy |alpha| < 1");
}

nlohmann::json EnsembleSpec::to_json() const {
  return {{"n", n()}, {"pauli", pauli.str()}, {"alpha", alpha}};
}

EnsembleSpec EnsembleSpec::from_json(const nlohmann::json& j) {
  EnsembleSpec spec{PauliString::parse(j.at("pauli").get<std::string>()), j.at("alpha").get<double>()};
  if (j.contains("n") && j.at("n").get<std::size_t>() != spec.n()) {
    throw spec_error("ensemble n does not match Pauli length");
  }
  return spec;
}

Eigen::VectorXcd ProductStateSample::dense() const {
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(1);
  // qubit k on bit k: later qubits are more significant, so they go on the left.
  for (std::size_t k = 0; k < qubits.size(); ++k) {
    const QubitPureState q = qubits[k].state();
    Eigen::VectorXcd next(v.size() * 2);
    next.head(v.size()) = q[0] * v;
    next.tail(v.size()) = q[1] * v;
    v = std::move(next);
  }
  return v;
}

ProductStateSample sample_state(const EnsembleSpec& spec, Rng& rng) {
  spec.validate();
  RngChooser chooser{rng};
  return sample_state_with(spec, chooser);
}

Eigen::MatrixXcd pauli_dense(const PauliString& p) {
  const std::size_t n = p.size();
  if (n > kDenseQubitCap) throw resource_error("dense Pauli matrix limited to 10 qubits");
  const std::size_t dim = std::size_t{1} << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    cplx amp = 1.0;
    std::size_t row = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const Mat2 s = pauli_matrix(p[k]);
      const std::size_t c = (col >> k) & 1U;
      // Each Pauli maps a basis state to exactly one basis state.
      const std::size_t r = (s[0 * 2 + c] != cplx{0.0}) ? 0 : 1;
      amp *= s[r * 2 + c];
      row |= r << k;
    }
    m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = amp;
  }
  return m;
}

Eigen::MatrixXcd exact_density(const EnsembleSpec& spec) {
  spec.validate();
  if (spec.n() > kDenseQubitCap) throw resource_error("exact density limited to 10 qubits");
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << spec.n());
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Identity(dim, dim) + spec.alpha * pauli_dense(spec.pauli);
  return rho / static_cast<double>(dim);
}

}  // namespace qlab
