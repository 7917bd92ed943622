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
#include <bit>
#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include "qlab/rng.hpp"

namespace qlab {

using cplx = std::complex<double>;

/// Single-qubit Pauli. Declaration order is the canonical order I < X < Y < Z.
enum class PauliLetter : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(PauliLetter p);
PauliLetter letter_from_char(char c);

constexpr bool x_bit(PauliLetter p) { return p == PauliLetter::X || p == PauliLetter::Y; }
constexpr bool z_bit(PauliLetter p) { return p == PauliLetter::Z || p == PauliLetter::Y; }
constexpr PauliLetter letter_from_bits(bool x, bool z) {
  if (x) return z ? PauliLetter::Y : PauliLetter::X;
  return z ? PauliLetter::Z : PauliLetter::I;
}

/// Row-major 2x2 complex matrix.
using Mat2 = std::array<cplx, 4>;

Mat2 pauli_matrix(PauliLetter p);

/// An n-qubit Pauli word stored as packed x/z bit masks (qubit k is bit k).
/// Capacity is one machine word, which covers every experiment in this lab.
class PauliString {
 public:
  static constexpr std::size_t kMaxQubits = 64;

  /// Identity string on `n` qubits. Throws InvalidDimension unless 1 <= n <= 64.
  explicit PauliString(std::size_t n);
  PauliString(std::size_t n, std::uint64_t x, std::uint64_t z);

  /// Parses an uppercase word such as "XZIY". Leftmost letter is qubit 0.
  static PauliString parse(std::string_view text);

  std::size_t size() const { return n_; }
  std::uint64_t x_bits() const { return x_; }
  std::uint64_t z_bits() const { return z_; }
  std::uint64_t support() const { return x_ | z_; }
  std::size_t weight() const { return static_cast<std::size_t>(std::popcount(x_ | z_)); }
  bool is_identity() const { return (x_ | z_) == 0; }

  PauliLetter operator[](std::size_t k) const { return letter_from_bits((x_ >> k) & 1U, (z_ >> k) & 1U); }
  void set(std::size_t k, PauliLetter p);

  std::string str() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  std::size_t n_;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
};

/// Uniform over all 4^n words, or over the 4^n - 1 non-identity words.
PauliString sample_pauli_string(std::size_t n, bool exclude_identity, Rng& rng);

/// Two amplitudes (|0>, |1>) of a single-qubit pure state.
using QubitPureState = std::array<cplx, 2>;

/// Eigenvector of `letter` with eigenvalue `sign`. For I the computational
/// state |0> (sign +1) or |1> (sign -1) is returned.
QubitPureState pauli_eigenstate(PauliLetter letter, int sign);

/// Bell outcomes with their 2-bit wire encodings: Psi+ = 00, Psi- = 01,
/// Phi+ = 10, Phi- = 11.
///   Psi+ = (|00>+|11>)/sqrt2   Psi- = (|00>-|11>)/sqrt2
///   Phi+ = (|01>+|10>)/sqrt2   Phi- = (|01>-|10>)/sqrt2
/// The encoding is (x, z) of the Pauli sigma with |B> ~ (I (x) sigma)|Psi+>,
/// which gives the bijection Psi+ <-> I, Psi- <-> Z, Phi+ <-> X, Phi- <-> Y.
enum class BellOutcome : std::uint8_t { PsiPlus = 0, PsiMinus = 1, PhiPlus = 2, PhiMinus = 3 };

constexpr PauliLetter bell_letter(BellOutcome b) {
  const auto v = static_cast<std::uint8_t>(b);
  return letter_from_bits((v >> 1) & 1U, v & 1U);
}
constexpr BellOutcome bell_from_letter(PauliLetter p) {
  return static_cast<BellOutcome>((x_bit(p) ? 2 : 0) | (z_bit(p) ? 1 : 0));
}
const char* bell_name(BellOutcome b);

/// Amplitudes of the Bell state in the basis |00>, |01>, |10>, |11>.
std::array<cplx, 4> bell_vector(BellOutcome b);

/// Eigenvalue of sigma (x) sigma on the Bell state `outcome`.
constexpr int bell_sign(PauliLetter sigma, BellOutcome outcome) {
  const PauliLetter tau = bell_letter(outcome);
  const bool anticommute = (x_bit(sigma) && z_bit(tau)) != (z_bit(sigma) && x_bit(tau));
  const int base = sigma == PauliLetter::Y ? -1 : 1;
  return anticommute ? -base : base;
}

/// Product over qubits of bell_sign(O_k, B_k) for a Bell string given as x/z
/// masks (qubit k outcome encoded as (x_k, z_k)).
inline int bell_sign_product(const PauliString& o, std::uint64_t bell_x, std::uint64_t bell_z) {
  const std::uint64_t ox = o.x_bits();
  const std::uint64_t oz = o.z_bits();
  const int parity = std::popcount(ox & oz) + std::popcount((ox & bell_z) ^ (oz & bell_x));
  return (parity & 1) ? -1 : 1;
}

}  // namespace qlab

template <>
struct std::hash<qlab::PauliString> {
  std::size_t operator()(const qlab::PauliString& p) const noexcept {
    return qlab::mix64(p.x_bits() ^ qlab::mix64(p.z_bits() ^ p.size()));
  }
};
