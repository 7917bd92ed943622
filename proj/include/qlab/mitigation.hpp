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

#include "qlab/bell.hpp"
#include "qlab/noise.hpp"

namespace qlab {

struct MitigatedEstimate {
  double value = 0.0;
  /// Standard error from the spread of per-record replica means.
  double std_error = 0.0;
};

/// Readout-mitigated version of estimate_a. Each record is expanded with
/// noise_inversion; a replica contributes coefficient * gamma * sign, where
/// sign = prod_k bell_sign(O_k, S'_k) on the replica bits and gamma is the
/// quasi-probability norm prod_i 1 / (2 p_i - 1) of the inverse channel
/// that the expansion samples from (p_i as chosen by noise_inversion). The
/// result is the mean over all replicas.
///
/// Requires every diagonal calibration entry to exceed 1/2.
MitigatedEstimate mitigated_estimate_a(const BellDataset& data, const ReadoutProfile& profile, const PauliString& o,
                                       std::size_t inverse_cnt, Rng& rng);

}  // namespace qlab
