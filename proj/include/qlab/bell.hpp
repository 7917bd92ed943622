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
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qlab/ensemble.hpp"
#include "qlab/noise.hpp"
#include "qlab/pauli.hpp"

namespace qlab {

/// Bell outcome of every qubit pair for one two-copy experiment. Pair k is
/// stored as bit k of the x and z masks (its 2-bit encoding is (x_k, z_k)).
struct BellRecord {
  std::size_t n = 0;
  std::uint64_t x = 0;
  std::uint64_t z = 0;

  BellOutcome outcome(std::size_t k) const {
    return static_cast<BellOutcome>((((x >> k) & 1U) << 1) | ((z >> k) & 1U));
  }
  void set(std::size_t k, BellOutcome b);

  /// 2n characters; pair k occupies positions 2k (x bit) and 2k+1 (z bit).
  std::string bits() const;
  static BellRecord from_bits(const std::string& bits);
  BitRow bit_row() const;
  static BellRecord from_bit_row(const BitRow& row);

  friend bool operator==(const BellRecord&, const BellRecord&) = default;
};

struct BellDataset {
  std::size_t n = 0;
  std::vector<BellRecord> records;
  std::optional<EnsembleSpec> spec;
  std::uint64_t seed = 0;
  std::optional<ReadoutProfile> noise;

  std::size_t size() const { return records.size(); }
};

/// Born probabilities of the four Bell outcomes (order Psi+, Psi-, Phi+, Phi-)
/// for the product a (x) b. Inputs must be normalized to within 1e-9.
std::array<double, 4> bell_probs(const QubitPureState& a, const QubitPureState& b);

/// N_Q two-copy experiments: each draws two fresh copies of rho and measures
/// every qubit pair in the Bell basis. `noise`, if given, acts on the 2n-bit
/// encoding of each record.
BellDataset run_quantum_enhanced(const EnsembleSpec& spec, std::size_t n_q, const ReadoutProfile* noise, Rng& rng);

/// Mean over records of prod_k bell_sign(O_k, S_k). Unbiased for |tr(O rho)|^2.
double estimate_a(const BellDataset& data, const PauliString& o);

/// sqrt(max(0, a)).
double clamp_sqrt(double a);
double estimate_b(const BellDataset& data, const PauliString& o);

/// 1 if b(O1) >= b(O2), else 2.
int compare_observables(const BellDataset& data, const PauliString& o1, const PauliString& o2);

/// JSONL: one header object, then {"t":..., "bits":...} per record.
void write_jsonl(std::ostream& out, const BellDataset& data);
BellDataset read_bell_jsonl(std::istream& in);

}  // namespace qlab
