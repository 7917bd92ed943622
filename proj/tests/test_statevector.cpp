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

#include <numbers>

#include "qlab/statevector.hpp"
#include "support/dense_circuit.hpp"
#include "support/oracles.hpp"
#include "support/testing.hpp"

using namespace qlab;
using testing::error_kind;

namespace {

const oracle::cd kI{0.0, 1.0};
constexpr double kPi = std::numbers::pi;

oracle::Mat xpow(double t) {
  oracle::Mat m(2, 2);
  const double c = std::cos(kPi * t / 2);
  const double s = std::sin(kPi * t / 2);
  m << c, -kI * s, -kI * s, c;
  return std::exp(kI * (kPi * t / 2)) * m;
}

oracle::Mat zpow(double t) {
  oracle::Mat m = oracle::Mat::Identity(2, 2);
  m(1, 1) = std::exp(kI * (kPi * t));
  return m;
}

oracle::Vec random_state(std::size_t n, Rng& rng) {
  oracle::Vec v(Eigen::Index{1} << n);
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = oracle::cd(rng.normal(), rng.normal());
  return v / v.norm();
}

StateVector to_state(const oracle::Vec& v) {
  return StateVector::from_amplitudes(std::vector<cplx>(v.data(), v.data() + v.size()));
}

oracle::Vec to_vec(const StateVector& s) {
  return Eigen::Map<const oracle::Vec>(s.amplitudes().data(), static_cast<Eigen::Index>(s.dim()));
}

Circuit random_circuit(std::size_t n, std::size_t gates, Rng& rng) {
  Circuit c;
  c.n = n;
  for (std::size_t i = 0; i < gates; ++i) {
    const std::size_t a = rng.below(n);
    std::size_t b = rng.below(n);
    while (b == a) b = rng.below(n);
    switch (rng.below(7)) {
      case 0: c.gates.push_back(Gate::phxz(a, 2 * rng.uniform(), 2 * rng.uniform(), 2 * rng.uniform())); break;
      case 1: c.gates.push_back(Gate::roty(a, 6 * rng.uniform())); break;
      case 2: c.gates.push_back(Gate::h(a)); break;
      case 3: c.gates.push_back(Gate::syc(a, b)); break;
      case 4: c.gates.push_back(Gate::swap(a, b)); break;
      case 5: c.gates.push_back(Gate::cnot(a, b)); break;
      default: c.gates.push_back(Gate::compiled(a, b, syc_matrix())); break;
    }
  }
  return c;
}

CompiledTsymGate compile_with_retries(std::uint64_t seed) {
  for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
    Rng rng = Rng::derive(seed, {attempt});
    try {
      return compile_tsym_gate(rng);
    } catch (const Error& e) {
      REQUIRE(e.kind() == Error::Kind::NonConvergence);
    }
  }
  FAIL("compilation never converged");
  return {};
}

}  // namespace

TEST_SUITE("statevector") {

TEST_CASE("gate matrices match their definitions") {
  for (double a : {0.0, 0.3, 1.7}) {
    for (double x : {0.0, 0.5, 1.2}) {
      for (double z : {0.0, 0.9}) {
        const oracle::Mat want = zpow(z) * zpow(a) * xpow(x) * zpow(-a);
        CHECK((testing::to_mat(phxz_matrix(a, x, z)) - want).norm() < 1e-12);
      }
    }
  }
  for (double t : {0.0, 0.4, 2.5}) {
    const oracle::Mat want = std::cos(t) * oracle::pauli('I') - kI * std::sin(t) * oracle::pauli('Y');
    CHECK((testing::to_mat(roty_matrix(t)) - want).norm() < 1e-12);
  }
  oracle::Mat syc = oracle::Mat::Zero(4, 4);
  syc(0, 0) = 1;
  syc(1, 2) = -kI;
  syc(2, 1) = -kI;
  syc(3, 3) = std::exp(-kI * (kPi / 6));
  CHECK((testing::to_mat(syc_matrix()) - syc).norm() < 1e-12);
}

TEST_CASE("apply_gate examples") {
  const double r = 1.0 / std::sqrt(2.0);
  const StateVector plus = apply_gate(StateVector(1), Gate::h(0));
  CHECK(std::abs(plus.amplitudes()[0] - cplx(r, 0)) < 1e-12);
  CHECK(std::abs(plus.amplitudes()[1] - cplx(r, 0)) < 1e-12);

  // |01> has qubit 1 (the pair's first) set to 0 and qubit 0 set to 1.
  const StateVector s01 = apply_gate(StateVector::basis(2, 0b01), Gate::syc(1, 0));
  CHECK(std::abs(s01.amplitudes()[0b10] - cplx(0, -1)) < 1e-12);
  CHECK(std::abs(s01.amplitudes()[0b01]) < 1e-12);
  const StateVector s11 = apply_gate(StateVector::basis(2, 0b11), Gate::syc(1, 0));
  CHECK(std::abs(s11.amplitudes()[0b11] - std::exp(cplx(0, -kPi / 6))) < 1e-12);

  const StateVector flipped = apply_gate(StateVector::basis(3, 0b001), Gate::cnot(0, 2));
  CHECK(std::abs(flipped.amplitudes()[0b101] - cplx(1, 0)) < 1e-15);
}

TEST_CASE("targets are validated") {
  StateVector s(3);
  CHECK(error_kind([&] { s.apply(Gate::h(3)); }) == Error::Kind::InvalidDimension);
  CHECK(error_kind([&] { s.apply(Gate::syc(0, 5)); }) == Error::Kind::InvalidDimension);
  CHECK(error_kind([&] { s.apply(Gate::syc(1, 1)); }) == Error::Kind::Validation);
  CHECK(error_kind([] { StateVector big(27); }) == Error::Kind::ResourceLimit);
  Mat4 not_unitary{};
  not_unitary[0] = 2.0;
  CHECK(error_kind([&] { Gate::compiled(0, 1, not_unitary); }) == Error::Kind::Validation);
}

TEST_CASE("gate application agrees with dense matrices") {
  Rng rng(3);
  for (std::size_t n : {2u, 3u, 5u}) {
    for (int t = 0; t < 30; ++t) {
      const Circuit c = random_circuit(n, 1, rng);
      const oracle::Vec v = random_state(n, rng);
      const oracle::Vec want = oracle::gate_dense(n, c.gates[0]) * v;
      CHECK((to_vec(apply_gate(to_state(v), c.gates[0])) - want).norm() < 1e-12);
    }
  }
}

TEST_CASE("circuit unitary equals the product of dense gates") {
  Rng rng(5);
  for (std::size_t n : {1u, 3u, 4u, 6u}) {
    const Circuit c = n == 1 ? Circuit{1, {Gate::h(0), Gate::roty(0, 0.3)}} : random_circuit(n, 40, rng);
    const Eigen::Index d = Eigen::Index{1} << n;
    const oracle::Mat want = oracle::dense_unitary(c);
    const Eigen::MatrixXcd u = circuit_unitary(c);
    CHECK((u - want).norm() < 1e-10);
    CHECK((u.adjoint() * u - oracle::Mat::Identity(d, d)).norm() < 1e-8);

    const oracle::Vec v = random_state(n, rng);
    StateVector s = to_state(v);
    run_circuit(s, c);
    CHECK((to_vec(s) - u * v).norm() < 1e-10);
  }
  CHECK((circuit_unitary(Circuit{3, {}}) - oracle::Mat::Identity(8, 8)).norm() == 0.0);
  const double r = 1.0 / std::sqrt(2.0);
  oracle::Mat h(2, 2);
  h << r, r, r, -r;
  CHECK((circuit_unitary(Circuit{1, {Gate::h(0)}}) - h).norm() < 1e-15);
  CHECK(error_kind([] { circuit_unitary(Circuit{11, {}}); }) == Error::Kind::ResourceLimit);
}

TEST_CASE("norm is preserved over long sequences") {
  Rng rng(7);
  const Circuit c = random_circuit(8, 500, rng);
  StateVector s(8);
  run_circuit(s, c);
  CHECK(std::abs(s.norm() - 1.0) < 5e-9);
}

TEST_CASE("compiled T-symmetric gate") {
  bool entangling = false;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const CompiledTsymGate g = compile_with_retries(seed);
    CHECK(g.loss < 1e-9);
    CHECK(g.unitarity_residual < 1e-9);
    const oracle::Mat v = testing::to_mat(g.v);
    CHECK(v.imag().norm() < 1e-9);
    const Eigen::MatrixXd re = v.real();
    CHECK((re * re.transpose() - Eigen::MatrixXd::Identity(4, 4)).norm() < 2e-9);
    CHECK((testing::to_mat(fix_global_phase(tsym_candidate(g.params))) - v).norm() < 1e-12);

    // Operator-Schmidt decomposition: reshuffle V[(a b),(a' b')] into R[(a a'),(b b')].
    Eigen::MatrixXcd r(4, 4);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int ap = 0; ap < 2; ++ap)
          for (int bp = 0; bp < 2; ++bp) r(2 * a + ap, 2 * b + bp) = v(2 * a + b, 2 * ap + bp);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(r);
    if (svd.singularValues()(1) > 0.1) entangling = true;
  }
  CHECK(entangling);
  Rng rng(1);
  CHECK(error_kind([&] { compile_tsym_gate(rng, 10, 0.0); }) == Error::Kind::Validation);
}

TEST_CASE("phase fixing") {
  Mat4 u = syc_matrix();
  for (cplx& e : u) e *= std::exp(cplx(0, 0.7));
  const Mat4 fixed = fix_global_phase(u);
  CHECK(std::abs(fixed[0] - cplx(1, 0)) < 1e-15);
  CHECK(imaginary_loss(u) == doctest::Approx(std::sqrt(2.0 + std::pow(std::sin(kPi / 6), 2))).epsilon(1e-12));
}

TEST_CASE("brickwork partitions") {
  Rng rng(11);
  const Circuit c = generate_1d_circuit(6, 2, SymmetryClass::General, rng);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (const Gate& g : c.gates)
    if (g.arity() == 2) pairs.emplace_back(g.qubits[0], g.qubits[1]);
  const std::vector<std::pair<std::size_t, std::size_t>> want{{0, 1}, {2, 3}, {4, 5}, {1, 2}, {3, 4}};
  CHECK(pairs == want);
  CHECK(c.gates.size() == 17);
  CHECK(error_kind([&] { generate_1d_circuit(1, 2, SymmetryClass::General, rng); }) == Error::Kind::InvalidDimension);
}

TEST_CASE("generation is deterministic") {
  for (SymmetryClass s : {SymmetryClass::General, SymmetryClass::TSymmetric}) {
    Rng a(13);
    Rng b(13);
    CHECK(generate_1d_circuit(5, 5, s, a).to_json() == generate_1d_circuit(5, 5, s, b).to_json());
  }
}

TEST_CASE("T-symmetric circuits are real and Y-blind") {
  Rng rng(17);
  for (std::size_t n = 2; n <= 6; ++n) {
    const Circuit c = generate_1d_circuit(n, n, SymmetryClass::TSymmetric, rng);
    Eigen::MatrixXcd u = circuit_unitary(c);
    Eigen::Index r = 0;
    Eigen::Index col = 0;
    u.cwiseAbs().maxCoeff(&r, &col);
    u *= std::conj(u(r, col)) / std::abs(u(r, col));
    CHECK(u.imag().norm() < 1e-6);

    StateVector s(n);
    run_circuit(s, c);
    const oracle::Vec v = to_vec(s);
    for (std::size_t q = 0; q < n; ++q) {
      std::string word(n, 'I');
      word[q] = 'Y';
      CHECK(std::abs(v.dot(oracle::pauli_word(word) * v)) < 1e-8);
    }
  }
}

TEST_CASE("general circuits spread probability like Porter-Thomas") {
  Rng rng(19);
  const std::size_t n = 8;
  double collision = 0.0;
  const int circuits = 10;
  for (int t = 0; t < circuits; ++t) {
    const Circuit c = generate_1d_circuit(n, n, SymmetryClass::General, rng);
    StateVector s(n);
    run_circuit(s, c);
    for (const cplx& a : s.amplitudes()) collision += std::norm(a) * std::norm(a);
  }
  const double ratio = collision / circuits / (2.0 / 256.0);
  CHECK(ratio > 1 / 1.5);
  CHECK(ratio < 1.5);
}

TEST_CASE("circuit json round trip") {
  Rng rng(23);
  for (SymmetryClass s : {SymmetryClass::General, SymmetryClass::TSymmetric}) {
    Circuit c = generate_1d_circuit(4, 3, s, rng);
    c.seed = 99;
    const Circuit back = Circuit::from_json(c.to_json());
    CHECK(back.to_json() == c.to_json());
    CHECK((circuit_unitary(back) - circuit_unitary(c)).norm() < 1e-15);
  }
}

}
