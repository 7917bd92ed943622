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

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qlab/noise.hpp"
#include "qlab/rng.hpp"
#include "qlab/statevector.hpp"

namespace qlab {

enum class Strategy { Conventional, QuantumEnhanced };
const char* strategy_name(Strategy s);
Strategy strategy_from_name(const std::string& name);

struct DynamicsExperimentConfig {
  std::size_t n = 0;
  std::size_t depth = 0;
  std::size_t repetitions = 0;
  Strategy strategy = Strategy::Conventional;
  std::optional<ReadoutProfile> noise;
};

/// repetitions x width bits, row-major. width = n (conventional) or 2n.
struct OutcomeMatrix {
  std::size_t width = 0;
  std::vector<std::uint8_t> bits;

  std::size_t rows() const { return width == 0 ? 0 : bits.size() / width; }
  std::uint8_t at(std::size_t row, std::size_t col) const { return bits[row * width + col]; }

  friend bool operator==(const OutcomeMatrix&, const OutcomeMatrix&) = default;
};

/// Unitary map taking the +1/-1 eigenstates of Y to |0>/|1> (H S^dagger).
Mat2 y_basis_rotation();

/// Shots of the circuit on |0^n> measured in the Y basis on every qubit.
/// Bit j = 1 means qubit j returned eigenvalue -1.
OutcomeMatrix run_conventional_dynamics(const Circuit& circuit, const DynamicsExperimentConfig& cfg, Rng& rng);

/// Exact per-qubit probability of bit 1 in the conventional Y-basis readout.
std::vector<double> y_basis_marginals(const Circuit& circuit);

/// Distribution of Bell strings of the two-query protocol (Bell pairs between
/// system and memory, U on system, swap, U on system, Bell measurement of each
/// pair). With M = U U^T the probability of the string (x, z) is
/// |tr(X^x Z^z M)|^2 / 4^n. Only M (4^n entries) is stored; the 4^n
/// probabilities are generated lazily: the x-marginal is sum_k |M[k, k^x]|^2 / 2^n
/// and the z-conditional for a given x comes from a Walsh-Hadamard transform
/// of the diagonal k -> M[k, k^x].
class BellStringDistribution {
 public:
  static constexpr std::size_t kMaxQubits = 12;

  explicit BellStringDistribution(const Circuit& circuit);

  std::size_t qubits() const { return n_; }
  /// P(x, z), computed on demand.
  double probability(std::uint64_t x, std::uint64_t z) const;
  double x_marginal(std::uint64_t x) const { return x_marginal_[x]; }
  double all_psi_plus_probability() const { return probability(0, 0); }
  /// Draws (x, z).
  std::pair<std::uint64_t, std::uint64_t> sample(Rng& rng) const;
  /// The symmetric matrix U U^T, column-major.
  const std::vector<cplx>& m_matrix() const { return m_; }

 private:
  std::vector<double> z_conditional(std::uint64_t x) const;
  const std::vector<double>& cached_z_cdf(std::uint64_t x) const;

  std::size_t n_;
  std::size_t dim_;
  std::vector<cplx> m_;
  std::vector<double> x_marginal_;
  std::vector<double> x_cdf_;
  mutable std::map<std::uint64_t, std::vector<double>> z_cdf_cache_;
};

BellStringDistribution quantum_enhanced_distribution(const Circuit& circuit);

/// Samples cfg.repetitions Bell strings; row layout per pair k is
/// (x_k, z_k) at columns (2k, 2k+1). Readout noise acts per physical bit.
OutcomeMatrix run_quantum_enhanced_dynamics(const Circuit& circuit, const DynamicsExperimentConfig& cfg, Rng& rng);

/// Dispatches on cfg.strategy.
OutcomeMatrix run_dynamics(const Circuit& circuit, const DynamicsExperimentConfig& cfg, Rng& rng);

struct DynamicsDatasetHeader {
  std::uint64_t circuit_seed = 0;
  SymmetryClass symmetry = SymmetryClass::General;
  Strategy strategy = Strategy::Conventional;
  std::size_t n = 0;
  std::size_t depth = 0;
  std::optional<ReadoutProfile> noise;
};

void write_jsonl(std::ostream& out, const DynamicsDatasetHeader& header, const OutcomeMatrix& m);
std::pair<DynamicsDatasetHeader, OutcomeMatrix> read_dynamics_jsonl(std::istream& in);

}  // namespace qlab
