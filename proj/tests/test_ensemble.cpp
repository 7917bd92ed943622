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

#include <string>

#include "qlab/ensemble.hpp"
#include "support/oracles.hpp"
#include "support/testing.hpp"

using namespace qlab;
using testing::error_kind;

namespace {

oracle::Vec product_vector(const ProductStateSample& s) {
  oracle::Vec v = oracle::Vec::Ones(1);
  for (std::size_t k = 0; k < s.size(); ++k) v = oracle::kron(testing::to_vec(s.qubit(k)), v);
  return v;
}

oracle::Mat enumerated_density(const EnsembleSpec& spec) {
  const Eigen::Index d = Eigen::Index{1} << spec.n();
  oracle::Mat rho = oracle::Mat::Zero(d, d);
  oracle::BranchEnumerator walk;
  walk.for_each([&](oracle::BranchEnumerator& e) {
    const oracle::Vec v = product_vector(sample_state_with(spec, e));
    rho += e.weight() * v * v.adjoint();
  });
  return rho;
}

double mean_expectation(const EnsembleSpec& spec, const std::string& word, int draws, std::uint64_t seed,
                        double* se) {
  Rng rng(seed);
  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(draws));
  for (int i = 0; i < draws; ++i) {
    // Product state, so the expectation factorizes per qubit.
    const ProductStateSample s = sample_state(spec, rng);
    double value = 1.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
      const oracle::Vec q = testing::to_vec(s.qubit(k));
      value *= q.dot(oracle::pauli(word[k]) * q).real();
    }
    xs.push_back(value);
  }
  const auto st = oracle::stats(xs);
  *se = st.se;
  return st.mean;
}

}  // namespace

TEST_SUITE("state_ensemble") {

TEST_CASE("validation") {
  CHECK(error_kind([] { EnsembleSpec{PauliString(3), 0.9}.validate(); }) == Error::Kind::InvalidSpec);
  CHECK(error_kind([] { EnsembleSpec{PauliString::parse("XZ"), 1.0}.validate(); }) == Error::Kind::InvalidSpec);
  CHECK(error_kind([] { EnsembleSpec{PauliString::parse("XZ"), -1.2}.validate(); }) == Error::Kind::InvalidSpec);
  CHECK_FALSE(error_kind([] { EnsembleSpec{PauliString::parse("XZ"), -0.95}.validate(); }).has_value());
  Rng rng(1);
  CHECK(error_kind([&] { sample_state(EnsembleSpec{PauliString(2), 0.5}, rng); }) == Error::Kind::InvalidSpec);
}

TEST_CASE("branch average equals the target density, all two-qubit Paulis") {
  for (std::uint64_t x = 0; x < 4; ++x) {
    for (std::uint64_t z = 0; z < 4; ++z) {
      if ((x | z) == 0) continue;
      for (double alpha : {0.95, -0.9, 0.3}) {
        const EnsembleSpec spec{PauliString(2, x, z), alpha};
        const oracle::Mat diff = enumerated_density(spec) - oracle::state_density(spec.pauli.str(), alpha);
        CHECK(diff.cwiseAbs().maxCoeff() < 1e-12);
      }
    }
  }
}

TEST_CASE("branch average equals the target density, three qubits") {
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    const EnsembleSpec spec{sample_pauli_string(3, true, rng), 0.9 * (2 * rng.uniform() - 1)};
    const oracle::Mat diff = enumerated_density(spec) - oracle::state_density(spec.pauli.str(), spec.alpha);
    CHECK(diff.cwiseAbs().maxCoeff() < 1e-12);
  }
  for (const char* word : {"IIZ", "ZII", "XYZ", "IYI"}) {
    const EnsembleSpec spec{PauliString::parse(word), 0.95};
    CHECK((enumerated_density(spec) - oracle::state_density(word, 0.95)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("exact_density") {
  const Eigen::MatrixXcd rho = exact_density({PauliString::parse("Z"), 0.9});
  CHECK(std::abs(rho(0, 0) - cplx(0.95, 0)) < 1e-15);
  CHECK(std::abs(rho(1, 1) - cplx(0.05, 0)) < 1e-15);
  CHECK(std::abs(rho(0, 1)) < 1e-15);
  const Eigen::MatrixXcd xx = exact_density({PauliString::parse("XX"), 0.9});
  CHECK((xx - oracle::state_density("XX", 0.9)).cwiseAbs().maxCoeff() < 1e-15);

  const EnsembleSpec spec{PauliString::parse("XIYZ"), -0.7};
  const Eigen::MatrixXcd r = exact_density(spec);
  CHECK(std::abs(r.trace() - cplx(1, 0)) < 1e-12);
  CHECK((r - r.adjoint()).norm() < 1e-15);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(r);
  int high = 0;
  int low = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double v = es.eigenvalues()(i);
    if (std::abs(v - 1.7 / 16) < 1e-12) ++high;
    if (std::abs(v - 0.3 / 16) < 1e-12) ++low;
  }
  CHECK(high == 8);
  CHECK(low == 8);
  CHECK(error_kind([] { exact_density({PauliString::parse("ZZZZZZZZZZZ"), 0.5}); }) == Error::Kind::ResourceLimit);
}

TEST_CASE("monte carlo expectation of the planted Pauli") {
  double se = 0.0;
  const double z = mean_expectation({PauliString::parse("Z"), 0.95}, "Z", 1000000, 11, &se);
  CHECK(std::abs(z - 0.95) < 3 * se);
  const double x = mean_expectation({PauliString::parse("X"), -0.95}, "X", 200000, 12, &se);
  CHECK(std::abs(x + 0.95) < 3 * se);
}

TEST_CASE("other Paulis average to zero") {
  const EnsembleSpec spec{PauliString::parse("XZY"), 0.9};
  for (const char* q : {"XZI", "ZZY", "YZY", "IIZ"}) {
    double se = 0.0;
    const double m = mean_expectation(spec, q, 1000000, 13, &se);
    CHECK(std::abs(m) <= 5 * se);
  }
}

TEST_CASE("samples are normalized products") {
  Rng rng(9);
  const EnsembleSpec spec{PauliString::parse("XIZY"), 0.95};
  for (int i = 0; i < 100; ++i) {
    const ProductStateSample s = sample_state(spec, rng);
    REQUIRE(s.size() == 4);
    for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(testing::to_vec(s.qubit(k)).norm() - 1.0) < 1e-12);
    CHECK((s.dense() - product_vector(s)).norm() < 1e-12);
  }
}

TEST_CASE("json round trip") {
  const EnsembleSpec spec{PauliString::parse("XZIY"), -0.9};
  const nlohmann::json j = spec.to_json();
  CHECK(j["n"] == 4);
  CHECK(j["pauli"] == "XZIY");
  const EnsembleSpec back = EnsembleSpec::from_json(j);
  CHECK(back.pauli == spec.pauli);
  CHECK(back.alpha == spec.alpha);
}

}
