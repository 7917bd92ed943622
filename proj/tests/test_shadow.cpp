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

#include <doctest.h>

#include <sstream>
#include <vector>

#include "qlab/harness.hpp"
#include "qlab/shadow.hpp"
#include "support/oracles.hpp"
#include "support/testing.hpp"

using namespace qlab;
using testing::error_kind;

namespace {

ShadowDataset one_snapshot(const char* bases, std::uint64_t outcomes) {
  ShadowDataset d;
  d.n = std::string(bases).size();
  d.snapshots.push_back({PauliString::parse(bases), outcomes});
  return d;
}

/// Exact expectation of the single-snapshot estimate, enumerating state
/// branches, basis choices and outcomes with dense Born probabilities.
double exhaustive_shadow(const EnsembleSpec& spec, const PauliString& o) {
  const std::size_t n = spec.n();
  const char letters[3] = {'X', 'Y', 'Z'};
  std::size_t basis_count = 1;
  for (std::size_t k = 0; k < n; ++k) basis_count *= 3;
  double total = 0.0;
  oracle::BranchEnumerator walk;
  walk.for_each([&](oracle::BranchEnumerator& e) {
    const ProductStateSample s = sample_state_with(spec, e);
    for (std::size_t b = 0; b < basis_count; ++b) {
      std::string bases;
      for (std::size_t k = 0, r = b; k < n; ++k, r /= 3) bases += letters[r % 3];
      for (std::uint64_t out = 0; out < (std::uint64_t{1} << n); ++out) {
        double p = e.weight() / static_cast<double>(basis_count);
        for (std::size_t k = 0; k < n; ++k) {
          const oracle::Vec q = testing::to_vec(s.qubit(k));
          const double sign = ((out >> k) & 1U) ? -1.0 : 1.0;
          const oracle::Mat proj = (oracle::Mat::Identity(2, 2) + sign * oracle::pauli(bases[k])) / 2.0;
          p *= q.dot(proj * q).real();
        }
        if (p <= 0.0) continue;
        total += p * shadow_estimate(one_snapshot(bases.c_str(), out), o);
      }
    }
  });
  return total;
}

double accuracy(std::size_t n, Strategy strategy, std::size_t budget, int trials, std::uint64_t seed) {
  Rng rng(seed);
  int ok = 0;
  for (int t = 0; t < trials; ++t) ok += states_trial(n, strategy, budget, 0.9, std::nullopt, rng) ? 1 : 0;
  return ok / static_cast<double>(trials);
}

}  // namespace

TEST_SUITE("shadow_baseline") {

TEST_CASE("term examples") {
  CHECK(shadow_estimate(one_snapshot("ZZ", 0b00), PauliString::parse("ZZ")) == 9.0);
  CHECK(shadow_estimate(one_snapshot("XZ", 0b00), PauliString::parse("ZZ")) == 0.0);
  CHECK(shadow_estimate(one_snapshot("XZ", 0b10), PauliString::parse("IZ")) == -3.0);
  CHECK(shadow_estimate(one_snapshot("ZZ", 0b01), PauliString::parse("ZZ")) == -9.0);
  CHECK(error_kind([] { shadow_estimate(one_snapshot("ZZ", 0), PauliString::parse("Z")); }) ==
        Error::Kind::InvalidDimension);
}

TEST_CASE("born_plus") {
  const auto zero = pauli_eigenstate(PauliLetter::Z, 1);
  CHECK(born_plus(zero, PauliLetter::Z) == doctest::Approx(1.0));
  CHECK(born_plus(zero, PauliLetter::X) == doctest::Approx(0.5));
  CHECK(born_plus(pauli_eigenstate(PauliLetter::Y, -1), PauliLetter::Y) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("unbiased for tr(O rho) by exhaustive enumeration") {
  Rng rng(61);
  for (std::size_t n : {1u, 2u, 3u}) {
    for (int t = 0; t < 6; ++t) {
      const EnsembleSpec spec{sample_pauli_string(n, true, rng), 0.95 * (2 * rng.uniform() - 1)};
      const PauliString o = t % 2 == 0 ? spec.pauli : sample_pauli_string(n, true, rng);
      const double exact =
          (oracle::pauli_word(o.str()) * oracle::state_density(spec.pauli.str(), spec.alpha)).trace().real();
      CHECK(std::abs(exhaustive_shadow(spec, o) - exact) < 1e-10);
    }
  }
}

TEST_CASE("single-qubit Z-basis frequencies") {
  Rng rng(67);
  const ShadowDataset data = run_conventional({PauliString::parse("Z"), 0.95}, 300000, nullptr, rng);
  double hits = 0.0;
  double total = 0.0;
  for (const PauliSnapshot& s : data.snapshots) {
    if (s.bases[0] != PauliLetter::Z) continue;
    total += 1.0;
    hits += s.eigenvalue(0) > 0 ? 1.0 : 0.0;
  }
  const double p = (1 + 0.95) / 2;
  CHECK(std::abs(hits / total - p) < 3 * std::sqrt(p * (1 - p) / total));
}

TEST_CASE("identity readout profile leaves the data unchanged") {
  const EnsembleSpec spec{PauliString::parse("XYZ"), 0.9};
  const ReadoutProfile id = ReadoutProfile::identity(3);
  Rng a(71);
  Rng b(71);
  const ShadowDataset plain = run_conventional(spec, 300, nullptr, a);
  const ShadowDataset noisy = run_conventional(spec, 300, &id, b);
  for (std::size_t i = 0; i < plain.size(); ++i) {
    CHECK(plain.snapshots[i].bases == noisy.snapshots[i].bases);
    CHECK(plain.snapshots[i].outcomes == noisy.snapshots[i].outcomes);
  }
}

TEST_CASE("variance grows as 3^n / N for full-weight observables") {
  const std::size_t per_set = 50;
  for (const char* word : {"ZZ", "XYZX", "ZXYZYX"}) {
    const EnsembleSpec spec{PauliString::parse(word), 0.9};
    Rng rng(73);
    std::vector<double> estimates;
    for (int rep = 0; rep < 2000; ++rep) {
      estimates.push_back(shadow_estimate(run_conventional(spec, per_set, nullptr, rng), spec.pauli));
    }
    const auto st = oracle::stats(estimates);
    const double var = st.se * st.se * static_cast<double>(estimates.size());
    const double scaled = var * per_set / std::pow(3.0, static_cast<double>(spec.n()));
    CHECK(scaled > 0.5);
    CHECK(scaled < 2.0);
  }
}

TEST_CASE("comparator ties go to index 1") {
  const ShadowDataset d = one_snapshot("XX", 0);
  CHECK(compare_observables_conventional(d, PauliString::parse("ZZ"), PauliString::parse("YY")) == 1);
  CHECK(compare_observables_conventional(d, PauliString::parse("ZZ"), PauliString::parse("XX")) == 2);
  CHECK(error_kind([&] { compare_observables_conventional(d, PauliString::parse("XX"), PauliString::parse("XX")); }) ==
        Error::Kind::InvalidTask);
}

TEST_CASE("accuracy at n = 4 and n = 10 with 1000 experiments") {
  CHECK(accuracy(4, Strategy::Conventional, 1000, 1000, 79) > 0.7);
  const double far = accuracy(10, Strategy::Conventional, 1000, 1000, 83);
  CHECK(far >= 0.4);
  CHECK(far <= 0.6);
}

TEST_CASE("two-copy strategy beats shadows at equal copy count") {
  for (std::size_t n : {6u, 8u}) {
    const double conv = accuracy(n, Strategy::Conventional, 100, 1000, 89);
    const double quantum = accuracy(n, Strategy::QuantumEnhanced, 50, 1000, 97);
    CHECK(quantum >= conv + 0.15);
  }
}

TEST_CASE("jsonl round trip") {
  Rng rng(101);
  ShadowDataset data = run_conventional({PauliString::parse("XZYI"), 0.9}, 40, nullptr, rng);
  data.seed = 101;
  std::stringstream buf;
  write_jsonl(buf, data);
  const ShadowDataset back = read_shadow_jsonl(buf);
  REQUIRE(back.size() == data.size());
  CHECK(back.seed == 101);
  for (std::size_t i = 0; i < data.size(); ++i) {
    CHECK(back.snapshots[i].bases == data.snapshots[i].bases);
    CHECK(back.snapshots[i].outcomes == data.snapshots[i].outcomes);
  }
}

}
