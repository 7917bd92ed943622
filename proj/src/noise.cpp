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

#include "qlab/noise.hpp"

#include <cmath>
#include <string>

#include "qlab/errors.hpp"

namespace qlab {

void ReadoutProfile::validate() const {
  for (std::size_t i = 0; i < calib.size(); ++i) {
    const Confusion& c = calib[i];
    for (int t = 0; t < 2; ++t) {
      for (int m = 0; m < 2; ++m) {
        if (!(c[m][t] >= 0.0 && c[m][t] <= 1.0)) {
          throw validation_error("confusion matrix " + std::to_string(i) + " has entry outside [0,1]");
        }
      }
      if (std::abs(c[0][t] + c[1][t] - 1.0) > 1e-9) {
        throw validation_error("confusion matrix " + std::to_string(i) + " column does not sum to 1");
      }
    }
  }
}

bool ReadoutProfile::is_identity() const {
  for (const Confusion& c : calib) {
    if (c[0][0] != 1.0 || c[1][1] != 1.0) return false;
  }
  return true;
}

ReadoutProfile ReadoutProfile::identity(std::size_t width) { return uniform(width, 0.0); }

ReadoutProfile ReadoutProfile::uniform(std::size_t width, double flip) {
  ReadoutProfile p;
  p.calib.assign(width, Confusion{{{1.0 - flip, flip}, {flip, 1.0 - flip}}});
  p.validate();
  return p;
}

ReadoutProfile ReadoutProfile::sampled(std::size_t width, double lo, double hi, Rng& rng) {
  ReadoutProfile p;
  p.calib.reserve(width);
  for (std::size_t i = 0; i < width; ++i) {
    const double f = lo + (hi - lo) * rng.uniform();
    p.calib.push_back(Confusion{{{1.0 - f, f}, {f, 1.0 - f}}});
  }
  return p;
}

nlohmann::json ReadoutProfile::to_json() const {
  auto out = nlohmann::json::array();
  for (const Confusion& c : calib) out.push_back({{c[0][0], c[0][1]}, {c[1][0], c[1][1]}});
  return out;
}

ReadoutProfile ReadoutProfile::from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw validation_error("readout profile must be a JSON array of 2x2 matrices");
  ReadoutProfile p;
  for (const auto& m : j) {
    if (!m.is_array() || m.size() != 2 || !m[0].is_array() || m[0].size() != 2 || m[1].size() != 2) {
      throw validation_error("readout profile entries must be 2x2 matrices");
    }
    p.calib.push_back(Confusion{{{m[0][0].get<double>(), m[0][1].get<double>()},
                                 {m[1][0].get<double>(), m[1][1].get<double>()}}});
  }
  p.validate();
  return p;
}

BitRow apply_readout_noise(std::span<const std::uint8_t> bits, const ReadoutProfile& profile, Rng& rng) {
  if (bits.size() != profile.width()) throw dimension_error("bit string and readout profile widths differ");
  BitRow out(bits.begin(), bits.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const int b = out[i] ? 1 : 0;
    if (rng.bernoulli(1.0 - profile.calib[i][b][b])) out[i] = static_cast<std::uint8_t>(1 - b);
  }
  return out;
}

std::uint64_t apply_readout_noise(std::uint64_t bits, std::size_t width, const ReadoutProfile& profile,
                                  std::size_t offset, Rng& rng) {
  if (offset + width > profile.width()) throw dimension_error("readout profile narrower than bit block");
  for (std::size_t i = 0; i < width; ++i) {
    const int b = static_cast<int>((bits >> i) & 1U);
    const Confusion& c = profile.calib[offset + i];
    if (rng.bernoulli(1.0 - c[b][b])) bits ^= std::uint64_t{1} << i;
  }
  return bits;
}

ExpandedData noise_inversion(const std::vector<BitRow>& data, const ReadoutProfile& profile,
                             std::size_t inverse_cnt, Rng& rng) {
  if (inverse_cnt == 0) throw validation_error("inverse_cnt must be at least 1");
  profile.validate();
  ExpandedData out;
  out.rows.reserve(data.size() * inverse_cnt);
  out.coefficients.reserve(data.size() * inverse_cnt);
  for (const BitRow& row : data) {
    if (row.size() != profile.width()) throw dimension_error("data row width differs from readout profile");
    for (std::size_t r = 0; r < inverse_cnt; ++r) {
      BitRow single(row.size());
      double coefficient = 1.0;
      for (std::size_t i = 0; i < row.size(); ++i) {
        const double p = row[i] == 0 ? profile.calib[i][1][1] : profile.calib[i][0][0];
        if (rng.bernoulli(1.0 - p)) {
          single[i] = static_cast<std::uint8_t>(1 - row[i]);
          coefficient *= -1.0;
        } else {
          single[i] = row[i];
        }
      }
      out.rows.push_back(std::move(single));
      out.coefficients.push_back(coefficient);
    }
  }
  return out;
}

}  // namespace qlab
