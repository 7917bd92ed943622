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

#pragma once

#include <array>
#include <concepts>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "qlab/pauli.hpp"
#include "qlab/rng.hpp"

namespace qlab {

/// Hidden state rho = (I + alpha P) / 2^n.
struct EnsembleSpec {
  PauliString pauli;
  double alpha = 0.95;

  std::size_t n() const { return pauli.size(); }
  /// Throws InvalidSpec if P is the identity or |alpha| >= 1.
  void validate() const;

  nlohmann::json to_json() const;
  static EnsembleSpec from_json(const nlohmann::json& j);
};

/// A single-qubit Pauli eigenstate; computational states use basis Z.
struct EigenLabel {
  PauliLetter basis = PauliLetter::Z;
  std::int8_t sign = 1;

  /// Dense index in [0, 6): 2 * (basis - 1) + (sign < 0).
  int index() const { return 2 * (static_cast<int>(basis) - 1) + (sign < 0 ? 1 : 0); }
  QubitPureState state() const { return pauli_eigenstate(basis, sign); }

  friend bool operator==(const EigenLabel&, const EigenLabel&) = default;
};

/// One pure product state drawn from the ensemble.
struct ProductStateSample {
  std::vector<EigenLabel> qubits;

  std::size_t size() const { return qubits.size(); }
  QubitPureState qubit(std::size_t k) const { return qubits[k].state(); }
  /// Dense 2^n amplitude vector, qubit k on bit k. Intended for small n.
  Eigen::VectorXcd dense() const;
};

/// Source of discrete choices: returns an index drawn from a probability
/// vector. The sampler only ever talks to this interface, so tests can walk
/// every branch exactly.
template <class C>
concept Chooser = requires(C c, std::span<const double> w) {
  { c.pick(w) } -> std::convertible_to<std::size_t>;
};

struct RngChooser {
  Rng& rng;
  std::size_t pick(std::span<const double> w) { return rng.categorical(w); }
};

/// Draws one copy of rho as a random product of Pauli eigenstates:
///  * qubits with P_k = I are |0> or |1> uniformly;
///  * every non-identity qubit except the last is a uniformly chosen
///    eigenstate of P_k, and the running sign eta (initially sign(alpha)) is
///    multiplied by its eigenvalue;
///  * the last non-identity qubit is, with probability 1 - |alpha|, a
///    uniformly random computational state; otherwise the eigenstate of P_k
///    with eigenvalue eta.
template <Chooser C>
ProductStateSample sample_state_with(const EnsembleSpec& spec, C& chooser) {
  static constexpr std::array<double, 2> kFair{0.5, 0.5};
  const std::size_t n = spec.n();
  const std::uint64_t support = spec.pauli.support();
  const std::size_t last = support ? static_cast<std::size_t>(63 - std::countl_zero(support)) : 0;
  const double mag = spec.alpha < 0 ? -spec.alpha : spec.alpha;
  int eta = spec.alpha < 0 ? -1 : 1;

  ProductStateSample out;
  out.qubits.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const PauliLetter p = spec.pauli[k];
    EigenLabel& q = out.qubits[k];
    if (p == PauliLetter::I) {
      q = {PauliLetter::Z, static_cast<std::int8_t>(chooser.pick(kFair) == 0 ? 1 : -1)};
    } else if (k != last) {
      const int s = chooser.pick(kFair) == 0 ? 1 : -1;
      q = {p, static_cast<std::int8_t>(s)};
      eta *= s;
    } else {
      const std::array<double, 2> mix{1.0 - mag, mag};
      if (chooser.pick(mix) == 0) {
        q = {PauliLetter::Z, static_cast<std::int8_t>(chooser.pick(kFair) == 0 ? 1 : -1)};
      } else {
        q = {p, static_cast<std::int8_t>(eta)};
      }
    }
  }
  return out;
}

ProductStateSample sample_state(const EnsembleSpec& spec, Rng& rng);

/// (I + alpha P) / 2^n as a dense matrix, n <= 10.
Eigen::MatrixXcd exact_density(const EnsembleSpec& spec);

/// Dense 2^n x 2^n matrix of a Pauli string (qubit k on bit k), n <= 10.
Eigen::MatrixXcd pauli_dense(const PauliString& p);

}  // namespace qlab
