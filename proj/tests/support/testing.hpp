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

#include <optional>

#include <Eigen/Dense>

#include "qlab/errors.hpp"
#include "qlab/pauli.hpp"
#include "qlab/statevector.hpp"

namespace testing {

/// Kind of the qlab::Error thrown by f, or nullopt if it returns normally.
template <class F>
std::optional<qlab::Error::Kind> error_kind(F&& f) {
  try {
    f();
  } catch (const qlab::Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

inline Eigen::VectorXcd to_vec(const qlab::QubitPureState& s) {
  Eigen::VectorXcd v(2);
  v << s[0], s[1];
  return v;
}

inline Eigen::MatrixXcd to_mat(const qlab::Mat2& m) {
  Eigen::MatrixXcd out(2, 2);
  out << m[0], m[1], m[2], m[3];
  return out;
}

inline Eigen::MatrixXcd to_mat(const qlab::Mat4& m) {
  Eigen::MatrixXcd out(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out(r, c) = m[static_cast<std::size_t>(4 * r + c)];
  return out;
}

}  // namespace testing
