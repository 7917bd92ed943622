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
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "qlab/pauli.hpp"
#include "qlab/rng.hpp"

namespace qlab {

/// Row-major 4x4 matrix on a qubit pair (a, b); basis index is 2*bit_a + bit_b.
using Mat4 = std::array<cplx, 16>;

enum class GateKind { PhXZ, SYC, Compiled, RotY, SWAP, H, CNOT };

const char* gate_kind_name(GateKind k);
GateKind gate_kind_from_name(const std::string& name);

/// PhXZ(a, x, z) = Z^z Z^a X^x Z^-a with X^t, Z^t the usual half-turn powers
/// (X^t = e^{i pi t/2} [[cos, -i sin], [-i sin, cos]](pi t/2), Z^t = diag(1, e^{i pi t})).
Mat2 phxz_matrix(double a, double x, double z);
/// e^{-i t Y}.
Mat2 roty_matrix(double t);
/// iSWAP^dagger CPHASE(-pi/6).
Mat4 syc_matrix();

struct Gate {
  GateKind kind = GateKind::H;
  std::array<std::size_t, 2> qubits{0, 0};
  std::array<double, 3> params{};
  Mat4 unitary{};  // Compiled only

  static Gate phxz(std::size_t q, double a, double x, double z) { return {GateKind::PhXZ, {q, q}, {a, x, z}, {}}; }
  static Gate roty(std::size_t q, double t) { return {GateKind::RotY, {q, q}, {t, 0, 0}, {}}; }
  static Gate h(std::size_t q) { return {GateKind::H, {q, q}, {}, {}}; }
  static Gate syc(std::size_t a, std::size_t b) { return {GateKind::SYC, {a, b}, {}, {}}; }
  static Gate swap(std::size_t a, std::size_t b) { return {GateKind::SWAP, {a, b}, {}, {}}; }
  static Gate cnot(std::size_t control, std::size_t target) { return {GateKind::CNOT, {control, target}, {}, {}}; }
  /// Throws Validation unless `u` is unitary to 1e-9.
  static Gate compiled(std::size_t a, std::size_t b, const Mat4& u);

  std::size_t arity() const;
  Mat2 matrix1() const;
  Mat4 matrix2() const;

  nlohmann::json to_json() const;
  static Gate from_json(const nlohmann::json& j);
};

enum class SymmetryClass { General, TSymmetric };
const char* symmetry_name(SymmetryClass s);
SymmetryClass symmetry_from_name(const std::string& name);

struct Circuit {
  std::size_t n = 0;
  std::vector<Gate> gates;
  SymmetryClass symmetry = SymmetryClass::General;
  std::size_t depth = 0;
  std::uint64_t seed = 0;

  nlohmann::json to_json() const;
  static Circuit from_json(const nlohmann::json& j);
};

/// Dense state of n <= 26 qubits. Qubit k is bit k of the amplitude index.
class StateVector {
 public:
  static constexpr std::size_t kMaxQubits = 26;

  /// |0...0>.
  explicit StateVector(std::size_t n);
  static StateVector basis(std::size_t n, std::uint64_t index);
  static StateVector from_amplitudes(std::vector<cplx> amps);

  std::size_t qubits() const { return n_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<cplx>& amplitudes() const { return amps_; }
  std::vector<cplx>& amplitudes() { return amps_; }
  double norm() const;

  void apply(const Gate& g);
  void apply_matrix1(std::size_t q, const Mat2& m);
  void apply_matrix2(std::size_t a, std::size_t b, const Mat4& m);

 private:
  std::size_t n_;
  std::vector<cplx> amps_;
};

/// Returns g applied to `state` (value semantics; the input is not modified).
StateVector apply_gate(StateVector state, const Gate& gate);

void run_circuit(StateVector& state, const Circuit& circuit);

/// Dense unitary of a circuit with n <= 10 qubits, built column by column.
Eigen::MatrixXcd circuit_unitary(const Circuit& circuit);

/// Result of compiling a real two-qubit gate V = (U3 (x) U4) SYC (U1 (x) U2).
struct CompiledTsymGate {
  Mat4 v{};                   // phase-fixed, real up to `loss`
  std::array<double, 12> params{};
  double loss = 0.0;          // ||Im V||_F after phase fixing
  double unitarity_residual = 0.0;
  std::size_t iterations = 0;
};

/// exp(i (a X + b Y + c Z)).
Mat2 su2_exp(double a, double b, double c);
/// (U3 (x) U4) SYC (U1 (x) U2) for the 12 parameters (a_i, b_i, c_i), i = 1..4.
Mat4 tsym_candidate(const std::array<double, 12>& params);
/// Multiplies by the unit phase that makes the largest-magnitude entry of the
/// first row real and positive.
Mat4 fix_global_phase(const Mat4& v);
/// ||Im(fix_global_phase(V))||_F.
double imaginary_loss(const Mat4& v);

/// Damped Gauss-Newton (Levenberg-Marquardt) descent on the imaginary parts
/// from a random start until the loss drops below `tol`. Throws
/// NonConvergence after `max_iters` iterations or when no step reduces the
/// loss; callers retry with a new seed.
CompiledTsymGate compile_tsym_gate(Rng& rng, std::size_t max_iters = 500, double tol = 1e-9);

/// 1D brickwork circuit: `depth` rounds of (single-qubit layer, two-qubit
/// layer). Two-qubit layers alternate between pairs (0,1),(2,3),... and
/// (1,2),(3,4),... General circuits use random PhXZ and SYC; T-symmetric
/// circuits use random e^{-itY} and one compiled real gate V.
Circuit generate_1d_circuit(std::size_t n, std::size_t depth, SymmetryClass symmetry, Rng& rng);

}  // namespace qlab
