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

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "qlab/pauli.hpp"
#include "qlab/rng.hpp"

namespace qlab {

struct HiddenComponent {
  std::vector<cplx> psi;  // 2^m amplitudes, qubit k on bit k

  std::size_t qubits() const;
};

enum class Hypothesis { A, B };
const char* hypothesis_name(Hypothesis h);

/// rho_A = 1/2 |0><0| (x) |psi><psi| + 1/2 |1><1| (x) I / 2^(n-1);
/// rho_B is the same with the first qubit flipped.
struct PcaInstance {
  std::size_t n = 0;
  Hypothesis hypothesis = Hypothesis::A;
  HiddenComponent hidden;

  void validate() const;
};

/// Normalized complex Gaussian vector on m <= 10 qubits.
HiddenComponent sample_haar_state(std::size_t m, Rng& rng);

PcaInstance make_instance(std::size_t n, Hypothesis h, Rng& rng);

/// tr(Z_1 rho^2) / tr(rho^2) = +-(2^(n-1) - 1) / (2^(n-1) + 1).
double exact_target(const PcaInstance& inst);

/// Dense rho with the first qubit on the most significant bit, n <= 10.
Eigen::MatrixXcd density_matrix(const PcaInstance& inst);

struct TwoCopyTally {
  std::size_t shots = 0;
  double numerator = 0.0;    // mean of m_1 * prod_{k>=2} swap_k
  double denominator = 0.0;  // mean of prod_k swap_k
};

/// Per-shot means of the two estimator observables on rho (x) rho. Pair 1
/// (the first qubits) is measured in {|00>, |11>, Phi+, Phi-}, every other
/// pair in the Bell basis.
TwoCopyTally two_copy_tally(const PcaInstance& inst, std::size_t shots, Rng& rng);

/// numerator / denominator. Throws UnstableEstimate when the denominator
/// mean is not positive.
double two_copy_estimate(const PcaInstance& inst, std::size_t shots, Rng& rng);

/// Exact single-shot expectations of the two observables under the
/// simulated measurement, by enumeration of copy branches (n <= 6).
TwoCopyTally two_copy_expectation(const PcaInstance& inst);

/// Guess from the sign of the numerator; the denominator mean is positive
/// whenever the estimate exists, so this is the sign of the estimate.
Hypothesis two_copy_guess(const TwoCopyTally& tally);

/// Single-copy baseline: each of T copies is measured in a fresh Haar-random
/// product basis. The guess is the sign of the pairwise (second order) term
/// of the log-likelihood ratio with psi marginalized over the Haar measure;
/// single-outcome marginals carry no information because E|<chi|psi>|^2 is
/// the same under both hypotheses. T = 0 or a zero statistic gives A.
struct BaselineResult {
  Hypothesis guess = Hypothesis::A;
  double statistic = 0.0;
};
BaselineResult conventional_baseline(const PcaInstance& inst, std::size_t copies, Rng& rng);

}  // namespace qlab
