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

#include "qlab/pauli.hpp"

#include <cmath>

#include "qlab/errors.hpp"

namespace qlab {

char to_char(PauliLetter p) {
  switch (p) {
    case PauliLetter::I: return 'I';
    case PauliLetter::X: return 'X';
    case PauliLetter::Y: return 'Y';
    case PauliLetter::Z: return 'Z';
  }
  return '?';
}

PauliLetter letter_from_char(char c) {
  switch (c) {
    case 'I': return PauliLetter::I;
    case 'X': return PauliLetter::X;
    case 'Y': return PauliLetter::Y;
    case 'Z': return PauliLetter::Z;
    default: throw validation_error(std::string("not a Pauli letter: '") + c + "'");
  }
}

Mat2 pauli_matrix(PauliLetter p) {
  const cplx i{0.0, 1.0};
  switch (p) {
    case PauliLetter::I: return {1.0, 0.0, 0.0, 1.0};
    case PauliLetter::X: return {0.0, 1.0, 1.0, 0.0};
    case PauliLetter::Y: return {0.0, -i, i, 0.0};
    case PauliLetter::Z: return {1.0, 0.0, 0.0, -1.0};
  }
  return {};
}

PauliString::PauliString(std::size_t n) : n_(n) {
  if (n == 0 || n > kMaxQubits) {
    throw dimension_error("Pauli string length must be in [1, 64], got " + std::to_string(n));
  }
}

PauliString::PauliString(std::size_t n, std::uint64_t x, std::uint64_t z) : PauliString(n) {
  const std::uint64_t mask = n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
  if ((x | z) & ~mask) throw dimension_error("Pauli bits set beyond qubit count");
  x_ = x;
  z_ = z;
}

PauliString PauliString::parse(std::string_view text) {
  PauliString p(text.size());
  for (std::size_t k = 0; k < text.size(); ++k) p.set(k, letter_from_char(text[k]));
  return p;
}

void PauliString::set(std::size_t k, PauliLetter p) {
  if (k >= n_) throw dimension_error("qubit index out of range");
  const std::uint64_t bit = std::uint64_t{1} << k;
  x_ = x_bit(p) ? (x_ | bit) : (x_ & ~bit);
  z_ = z_bit(p) ? (z_ | bit) : (z_ & ~bit);
}

std::string PauliString::str() const {
  std::string s(n_, 'I');
  for (std::size_t k = 0; k < n_; ++k) s[k] = to_char((*this)[k]);
  return s;
}

PauliString sample_pauli_string(std::size_t n, bool exclude_identity, Rng& rng) {
  PauliString probe(n);  // validates n
  const std::uint64_t mask = n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
  while (true) {
    const std::uint64_t x = rng.next() & mask;
    const std::uint64_t z = rng.next() & mask;
    if (exclude_identity && (x | z) == 0) continue;
    return PauliString(n, x, z);
  }
}

QubitPureState pauli_eigenstate(PauliLetter letter, int sign) {
  const double r = 1.0 / std::sqrt(2.0);
  const bool plus = sign > 0;
  switch (letter) {
    case PauliLetter::I:
    case PauliLetter::Z:
      return plus ? QubitPureState{1.0, 0.0} : QubitPureState{0.0, 1.0};
    case PauliLetter::X:
      return {r, plus ? r : -r};
    case PauliLetter::Y:
      return {r, plus ? cplx{0.0, r} : cplx{0.0, -r}};
  }
  return {};
}

const char* bell_name(BellOutcome b) {
  switch (b) {
    case BellOutcome::PsiPlus: return "Psi+";
    case BellOutcome::PsiMinus: return "Psi-";
    case BellOutcome::PhiPlus: return "Phi+";
    case BellOutcome::PhiMinus: return "Phi-";
  }
  return "?";
}

std::array<cplx, 4> bell_vector(BellOutcome b) {
  const double r = 1.0 / std::sqrt(2.0);
  switch (b) {
    case BellOutcome::PsiPlus: return {r, 0.0, 0.0, r};
    case BellOutcome::PsiMinus: return {r, 0.0, 0.0, -r};
    case BellOutcome::PhiPlus: return {0.0, r, r, 0.0};
    case BellOutcome::PhiMinus: return {0.0, r, -r, 0.0};
  }
  return {};
}

}  // namespace qlab
