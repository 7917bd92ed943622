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

#include "qlab/bounds.hpp"

#include <cmath>

#include "qlab/errors.hpp"

namespace qlab {

namespace {

void check_delta(double delta) {
  if (!(delta > 0.0 && delta <= 0.5)) throw validation_error("delta must lie in (0, 1/2]");
}

double hilbert_factor(std::size_t n) { return (std::ldexp(1.0, static_cast<int>(n)) + 1.0) / 0.8505; }

}  // namespace

double lb_predict_abs(std::size_t n, double delta) {
  check_delta(delta);
  if (n == 0) throw dimension_error("n must be positive");
  return hilbert_factor(n) * std::log(1.0 / (2.0 * delta));
}

double lb_compare_abs(std::size_t n, double delta) {
  check_delta(delta);
  if (n == 0) throw dimension_error("n must be positive");
  return hilbert_factor(n) * std::log(2.0 / (1.0 + 2.0 * delta));
}

double lb_qpca(std::size_t n) {
  if (n < 2) throw dimension_error("qPCA bound needs n >= 2");
  return 1.0 + std::sqrt(std::log(10.0 / 7.0) / 2.0) * std::pow(2.0, static_cast<double>(n) / 2.0);
}

double lb_bounded_memory(std::size_t n, std::size_t k, double p) {
  if (n == 0) throw dimension_error("n must be positive");
  if (k > n) throw validation_error("memory size k must not exceed n");
  if (!(p > 0.5 && p < 1.0)) throw validation_error("success probability must lie in (1/2, 1)");
  const double four_n = std::pow(4.0, static_cast<double>(n));
  const double tv_per_step =
      std::pow(2.0, -static_cast<double>(n - k) / 3.0) * (1.0 + std::sqrt(four_n / (four_n - 1.0)));
  return (2.0 * p - 1.0) / tv_per_step;
}

}  // namespace qlab
