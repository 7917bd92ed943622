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
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "qlab/rng.hpp"

namespace qlab {

/// calib[m][t] = P(measure m | true bit t). Columns sum to one.
using Confusion = std::array<std::array<double, 2>, 2>;

/// Per-bit readout confusion matrices, one per measured classical bit.
struct ReadoutProfile {
  std::vector<Confusion> calib;

  std::size_t width() const { return calib.size(); }
  /// Throws Validation if any matrix has entries outside [0,1] or columns
  /// that do not sum to one.
  void validate() const;
  bool is_identity() const;

  static ReadoutProfile identity(std::size_t width);
  /// Symmetric flip probability on every bit.
  static ReadoutProfile uniform(std::size_t width, double flip);
  /// Independent symmetric flip rates drawn uniformly from [lo, hi] per bit.
  static ReadoutProfile sampled(std::size_t width, double lo, double hi, Rng& rng);

  /// JSON: a list of 2x2 row-major matrices.
  nlohmann::json to_json() const;
  static ReadoutProfile from_json(const nlohmann::json& j);

  friend bool operator==(const ReadoutProfile&, const ReadoutProfile&) = default;
};

using BitRow = std::vector<std::uint8_t>;

/// Flips bit i with probability 1 - calib[i][b][b].
BitRow apply_readout_noise(std::span<const std::uint8_t> bits, const ReadoutProfile& profile, Rng& rng);

/// Word-packed variant for `width` <= 64 bits (bit i of `bits` is bit i).
std::uint64_t apply_readout_noise(std::uint64_t bits, std::size_t width, const ReadoutProfile& profile,
                                  std::size_t offset, Rng& rng);

struct ExpandedData {
  std::vector<BitRow> rows;
  std::vector<double> coefficients;
};

/// Stochastic readout-error inversion. Every row is replicated
/// `inverse_cnt` times; in each replica bit i is flipped with probability
/// 1 - p, where p = calib[i][1][1] if the observed bit is 0 and
/// p = calib[i][0][0] if it is 1. Each flip multiplies the replica
/// coefficient by -1.
ExpandedData noise_inversion(const std::vector<BitRow>& data, const ReadoutProfile& profile,
                             std::size_t inverse_cnt, Rng& rng);

}  // namespace qlab
