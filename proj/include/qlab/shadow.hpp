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
#include <optional>
#include <vector>

#include "qlab/ensemble.hpp"
#include "qlab/noise.hpp"
#include "qlab/pauli.hpp"

namespace qlab {

/// One randomized single-copy Pauli measurement. Bit k of `outcomes` is 1
/// when qubit k returned eigenvalue -1 in basis `bases[k]`.
struct PauliSnapshot {
  PauliString bases;
  std::uint64_t outcomes = 0;

  int eigenvalue(std::size_t k) const { return ((outcomes >> k) & 1U) ? -1 : 1; }
};

struct ShadowDataset {
  std::size_t n = 0;
  std::vector<PauliSnapshot> snapshots;
  std::optional<EnsembleSpec> spec;
  std::uint64_t seed = 0;
  std::optional<ReadoutProfile> noise;

  std::size_t size() const { return snapshots.size(); }
};

/// <psi| (I + sigma)/2 |psi>: probability of eigenvalue +1 in basis sigma.
double born_plus(const QubitPureState& psi, PauliLetter basis);

/// N single-copy experiments with a uniformly random X/Y/Z basis per qubit.
ShadowDataset run_conventional(const EnsembleSpec& spec, std::size_t n_experiments, const ReadoutProfile* noise,
                               Rng& rng);

/// Pauli-shadow estimate of tr(O rho): mean over snapshots of
/// prod_{k in supp O} 3 * eigenvalue_k when every basis on the support of O
/// matches O, and 0 otherwise.
double shadow_estimate(const ShadowDataset& data, const PauliString& o);

/// 1 if |est(O1)| >= |est(O2)|, else 2.
int compare_observables_conventional(const ShadowDataset& data, const PauliString& o1, const PauliString& o2);

void write_jsonl(std::ostream& out, const ShadowDataset& data);
ShadowDataset read_shadow_jsonl(std::istream& in);

}  // namespace qlab
