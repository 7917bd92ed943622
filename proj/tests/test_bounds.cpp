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

#include <doctest.h>

#include <cmath>

#include "qlab/bounds.hpp"
#include "support/testing.hpp"

using namespace qlab;
using testing::error_kind;

TEST_SUITE("bounds") {

TEST_CASE("typed-out formulas") {
  for (std::size_t n = 1; n <= 40; ++n) {
    const double dim = std::pow(2.0, double(n));
    for (double delta : {0.01, 0.1, 0.2, 0.3, 0.45}) {
      CHECK(std::abs(lb_predict_abs(n, delta) - (dim + 1) / 0.8505 * std::log(1 / (2 * delta))) <=
            1e-12 * lb_predict_abs(n, delta));
      CHECK(std::abs(lb_compare_abs(n, delta) - (dim + 1) / 0.8505 * std::log(2 / (1 + 2 * delta))) <=
            1e-12 * lb_compare_abs(n, delta));
    }
    if (n >= 2) {
      CHECK(std::abs(lb_qpca(n) - (1 + std::sqrt(std::log(10.0 / 7.0) / 2) * std::pow(2.0, n / 2.0))) <= 1e-12 * lb_qpca(n));
    }
    for (std::size_t k = 0; k <= n; ++k) {
      const double want = (2 * 0.75 - 1) / (std::pow(2.0, -(double(n) - double(k)) / 3) *
                                            (1 + std::sqrt(std::pow(4.0, double(n)) / (std::pow(4.0, double(n)) - 1))));
      CHECK(std::abs(lb_bounded_memory(n, k, 0.75) - want) <= 1e-12 * want);
    }
  }
}

TEST_CASE("worked values") {
  CHECK(lb_predict_abs(7, 0.5) == 0.0);
  CHECK(lb_compare_abs(7, 0.5) == 0.0);
  CHECK(lb_predict_abs(4, 0.2) == doctest::Approx(18.31).epsilon(1e-3));
  CHECK(lb_predict_abs(20, 0.2) == doctest::Approx(1.130e6).epsilon(1e-3));
  CHECK(lb_compare_abs(4, 0.3) == doctest::Approx(4.46).epsilon(1e-3));
  CHECK(lb_qpca(2) == doctest::Approx(1.845).epsilon(1e-3));
  CHECK(lb_qpca(20) == doctest::Approx(433.4).epsilon(1e-3));
  CHECK(lb_bounded_memory(10, 10, 2.0 / 3.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-6));
  CHECK(lb_bounded_memory(20, 0, 2.0 / 3.0) == doctest::Approx(16.9).epsilon(2e-3));
}

TEST_CASE("monotonicity") {
  for (std::size_t n = 2; n < 40; ++n) {
    CHECK(lb_compare_abs(n + 1, 0.3) > lb_compare_abs(n, 0.3));
    CHECK(lb_qpca(n + 1) > lb_qpca(n));
    CHECK(lb_bounded_memory(n + 1, 0, 0.8) > lb_bounded_memory(n, 0, 0.8));
  }
  for (double d = 0.05; d < 0.45; d += 0.05) CHECK(lb_compare_abs(8, d + 0.05) < lb_compare_abs(8, d));
  for (std::size_t k = 0; k < 12; ++k) CHECK(lb_bounded_memory(12, k + 1, 0.8) < lb_bounded_memory(12, k, 0.8));
}

TEST_CASE("domain errors") {
  CHECK(error_kind([] { lb_predict_abs(4, 0.0); }) == Error::Kind::Validation);
  CHECK(error_kind([] { lb_predict_abs(4, 0.6); }) == Error::Kind::Validation);
  CHECK(error_kind([] { lb_compare_abs(4, -0.1); }) == Error::Kind::Validation);
  CHECK(error_kind([] { lb_qpca(1); }).has_value());
  CHECK(error_kind([] { lb_bounded_memory(4, 5, 0.7); }).has_value());
  CHECK(error_kind([] { lb_bounded_memory(4, 1, 0.5); }) == Error::Kind::Validation);
  CHECK(error_kind([] { lb_bounded_memory(4, 1, 1.0); }) == Error::Kind::Validation);
}

}
