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

#include "qlab/mitigation.hpp"

#include <cmath>

#include "qlab/errors.hpp"

namespace qlab {

MitigatedEstimate mitigated_estimate_a(const BellDataset& data, const ReadoutProfile& profile, const PauliString& o,
                                       std::size_t inverse_cnt, Rng& rng) {
  if (o.size() != data.n) throw dimension_error("observable length does not match dataset qubit count");
  if (profile.width() != 2 * data.n) throw dimension_error("readout profile must cover 2n bits");
  if (data.records.empty()) throw validation_error("empty Bell dataset");
  profile.validate();
  for (const Confusion& c : profile.calib) {
    if (c[0][0] <= 0.5 || c[1][1] <= 0.5) throw validation_error("readout profile is not invertible (diagonal <= 1/2)");
  }

  double sum = 0.0;
  double sum_sq = 0.0;
  for (const BellRecord& rec : data.records) {
    const BitRow row = rec.bit_row();
    double gamma = 1.0;
    for (std::size_t i = 0; i < row.size(); ++i) {
      const double p = row[i] == 0 ? profile.calib[i][1][1] : profile.calib[i][0][0];
      gamma /= 2.0 * p - 1.0;
    }
    const ExpandedData expanded = noise_inversion({row}, profile, inverse_cnt, rng);
    double record_total = 0.0;
    for (std::size_t r = 0; r < expanded.rows.size(); ++r) {
      const BellRecord replica = BellRecord::from_bit_row(expanded.rows[r]);
      record_total += expanded.coefficients[r] * bell_sign_product(o, replica.x, replica.z);
    }
    const double record_mean = gamma * record_total / static_cast<double>(inverse_cnt);
    sum += record_mean;
    sum_sq += record_mean * record_mean;
  }
  const auto count = static_cast<double>(data.records.size());
  const double mean = sum / count;
  const double var = count > 1 ? (sum_sq - count * mean * mean) / (count - 1) : 0.0;
  return {mean, std::sqrt(std::max(var, 0.0) / count)};
}

}  // namespace qlab
