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

namespace qlab {

// Sample-complexity lower bounds. All logarithms are natural. Values are
// returned unrounded; delta is accepted on (0, 1/2] so that the bound
// vanishes at the endpoint.

/// (2^n + 1) / 0.8505 * ln(1 / (2 delta)): predicting |tr(P rho)| without quantum memory.
double lb_predict_abs(std::size_t n, double delta);

/// (2^n + 1) / 0.8505 * ln(2 / (1 + 2 delta)): comparing two absolute values.
double lb_compare_abs(std::size_t n, double delta);

/// 1 + sqrt(ln(10/7) / 2) * 2^(n/2): distinguishing the qPCA hypotheses, n >= 2.
double lb_qpca(std::size_t n);

/// (2p - 1) / (2^(-(n-k)/3) * (1 + sqrt(4^n / (4^n - 1)))) with k memory
/// qubits and success probability p in (1/2, 1).
double lb_bounded_memory(std::size_t n, std::size_t k, double p);

}  // namespace qlab
