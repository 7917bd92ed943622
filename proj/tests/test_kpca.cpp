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

#include <algorithm>
#include <numeric>

#include "qlab/dynamics.hpp"
#include "qlab/kpca.hpp"
#include "support/oracles.hpp"
#include "support/testing.hpp"

using namespace qlab;
using testing::error_kind;

namespace {

Eigen::MatrixXd oracle_centered_kernel(const std::vector<FeatureVector>& f, double gamma) {
  const auto n = static_cast<Eigen::Index>(f.size());
  Eigen::MatrixXd k(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      double d = 0.0;
      for (std::size_t c = 0; c < f[0].size(); ++c) d += std::pow(f[i][c] - f[j][c], 2);
      k(i, j) = std::exp(-gamma * d);
    }
  }
  const Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / n);
  return h * k * h;
}

bool equal_up_to_sign(const Eigen::VectorXd& a, const Eigen::VectorXd& b, double tol) {
  return std::min((a - b).norm(), (a + b).norm()) < tol;
}

std::vector<FeatureVector> random_features(std::size_t count, std::size_t len, Rng& rng) {
  std::vector<FeatureVector> out(count, FeatureVector(len));
  for (auto& f : out)
    for (double& v : f) v = rng.uniform();
  return out;
}

struct Pipeline {
  std::vector<FeatureVector> features;
  std::vector<int> truth;
};

Pipeline simulate(std::size_t n, Strategy s, std::size_t per_class, std::size_t reps, std::uint64_t seed) {
  Pipeline p;
  for (std::size_t i = 0; i < 2 * per_class; ++i) {
    const SymmetryClass cls = i % 2 ? SymmetryClass::TSymmetric : SymmetryClass::General;
    Rng gen = Rng::derive(seed, {1, i});
    const Circuit c = generate_1d_circuit(n, n, cls, gen);
    Rng shots = Rng::derive(seed, {2, i});
    const OutcomeMatrix m = run_dynamics(c, {n, n, reps, s, std::nullopt}, shots);
    p.features.push_back(build_features(m));
    p.truth.push_back(cls == SymmetryClass::TSymmetric ? 1 : 0);
  }
  return p;
}

std::vector<double> first_component(const Pipeline& p) {
  const KernelModel model = fit_kernel_pca(p.features, default_gamma(p.features), 2);
  const Eigen::MatrixXd proj = training_projections(model);
  return {proj.col(0).data(), proj.col(0).data() + proj.rows()};
}

double pipeline_accuracy(const Pipeline& p) {
  return score_accuracy(classify_by_split(first_component(p)), p.truth);
}

}  // namespace

TEST_SUITE("kpca") {

TEST_CASE("feature examples") {
  const OutcomeMatrix m{2, {0, 1, 1, 1}};
  const FeatureVector f = build_features(m);
  REQUIRE(f.size() == 4);
  CHECK(f[0] == 0.5);
  CHECK(f[1] == 1.0);
  CHECK(f[2] == 0.25);
  CHECK(f[3] == 0.0);
  const FeatureVector zero = build_features(OutcomeMatrix{3, std::vector<std::uint8_t>(30, 0)});
  CHECK(std::all_of(zero.begin(), zero.end(), [](double v) { return v == 0.0; }));
  CHECK(error_kind([] { build_features(OutcomeMatrix{2, {0, 1}}); }) == Error::Kind::Validation);
}

TEST_CASE("features of a Bernoulli column") {
  Rng rng(3);
  const double p = 0.3;
  const std::size_t rows = 100000;
  OutcomeMatrix m{1, std::vector<std::uint8_t>(rows)};
  for (auto& b : m.bits) b = rng.bernoulli(p) ? 1 : 0;
  const FeatureVector f = build_features(m);
  CHECK(std::abs(f[0] - p) < 3 * std::sqrt(p * (1 - p) / rows));
  // Delta method: d/dp [p(1-p)] = 1 - 2p.
  CHECK(std::abs(f[1] - p * (1 - p)) < 3 * std::abs(1 - 2 * p) * std::sqrt(p * (1 - p) / rows) + 1e-12);
  // Matches the direct population variance.
  double var = 0.0;
  for (auto b : m.bits) var += (b - f[0]) * (b - f[0]);
  CHECK(f[1] == doctest::Approx(var / rows).epsilon(1e-12));
}

TEST_CASE("identical pair has unit kernel and rank zero") {
  const std::vector<FeatureVector> same{{0.2, 0.4}, {0.2, 0.4}};
  const KernelModel model = fit_kernel_pca(same, 1.0, 2);
  CHECK(model.kernel(0, 1) == 1.0);
  CHECK(model.degenerate());
  const std::vector<double> proj = project(model, {0.2, 0.4});
  CHECK(proj == std::vector<double>{0.0, 0.0});
  CHECK(training_projections(model).norm() == 0.0);
}

TEST_CASE("square corners match a Jacobi eigensolver") {
  const std::vector<FeatureVector> square{{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  const Eigen::MatrixXd kc = oracle_centered_kernel(square, 1.0);
  const auto [vals, vecs] = oracle::jacobi_eigen(kc);
  const KernelModel model = fit_kernel_pca(square, 1.0, 2);
  for (Eigen::Index i = 0; i < 4; ++i) CHECK(std::abs(model.eigenvalues(i) - vals(i)) < 1e-8);
  // The top two eigenvalues coincide, so compare the projected Gram matrix.
  const Eigen::MatrixXd p = training_projections(model);
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(4, 4);
  for (Eigen::Index c = 0; c < 2; ++c) gram += vals(c) * vecs.col(c) * vecs.col(c).transpose();
  CHECK((p * p.transpose() - gram).norm() < 1e-8);
}

TEST_CASE("rectangle corners match component by component") {
  const std::vector<FeatureVector> rect{{0, 0}, {2, 0}, {0, 1}, {2, 1}, {1, 0.5}};
  const auto [vals, vecs] = oracle::jacobi_eigen(oracle_centered_kernel(rect, 0.7));
  const KernelModel model = fit_kernel_pca(rect, 0.7, 3);
  const Eigen::MatrixXd p = training_projections(model);
  for (Eigen::Index c = 0; c < 3; ++c) {
    CHECK(std::abs(model.eigenvalues(c) - vals(c)) < 1e-8);
    CHECK(equal_up_to_sign(p.col(c), vecs.col(c) * std::sqrt(vals(c)), 1e-8));
  }
}

TEST_CASE("centering, PSD and projection consistency") {
  Rng rng(5);
  const std::vector<FeatureVector> f = random_features(30, 6, rng);
  const KernelModel model = fit_kernel_pca(f, default_gamma(f), 4);
  const Eigen::MatrixXd centered =
      model.eigenvectors * model.eigenvalues.asDiagonal() * model.eigenvectors.transpose();
  CHECK(centered.rowwise().sum().cwiseAbs().maxCoeff() < 1e-9);
  CHECK((centered - oracle_centered_kernel(f, model.gamma)).norm() < 1e-9);
  CHECK(model.eigenvalues.minCoeff() > -1e-8);
  for (Eigen::Index i = 1; i < model.eigenvalues.size(); ++i) CHECK(model.eigenvalues(i) <= model.eigenvalues(i - 1));
  CHECK((model.kernel - model.kernel.transpose()).norm() == 0.0);

  const Eigen::MatrixXd p = training_projections(model);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const std::vector<double> q = project(model, f[i]);
    for (std::size_t c = 0; c < 4; ++c) CHECK(std::abs(q[c] - p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c))) < 1e-8);
  }
  CHECK(error_kind([&] { project(model, {1.0}); }) == Error::Kind::InvalidDimension);
  CHECK(error_kind([&] { fit_kernel_pca(f, 1.0, 31); }) == Error::Kind::Validation);
  CHECK(error_kind([&] { fit_kernel_pca({f[0]}, 1.0, 1); }) == Error::Kind::Validation);
}

TEST_CASE("translation invariance") {
  Rng rng(7);
  std::vector<FeatureVector> f = random_features(12, 4, rng);
  const KernelModel a = fit_kernel_pca(f, 2.0, 2);
  for (auto& v : f)
    for (std::size_t c = 0; c < v.size(); ++c) v[c] += 0.5 + c;
  const KernelModel b = fit_kernel_pca(f, 2.0, 2);
  CHECK((training_projections(a) - training_projections(b)).norm() < 1e-8);
  CHECK(default_gamma(f) > 0.0);
}

TEST_CASE("permutation equivariance") {
  Rng rng(11);
  const std::vector<FeatureVector> f = random_features(15, 4, rng);
  std::vector<std::size_t> perm(f.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::reverse(perm.begin(), perm.end());
  std::swap(perm[2], perm[7]);
  std::vector<FeatureVector> g;
  for (std::size_t i : perm) g.push_back(f[i]);
  const Eigen::MatrixXd pf = training_projections(fit_kernel_pca(f, 1.5, 2));
  const Eigen::MatrixXd pg = training_projections(fit_kernel_pca(g, 1.5, 2));
  for (Eigen::Index c = 0; c < 2; ++c) {
    Eigen::VectorXd permuted(pf.rows());
    for (std::size_t i = 0; i < perm.size(); ++i) permuted(static_cast<Eigen::Index>(i)) = pf(static_cast<Eigen::Index>(perm[i]), c);
    CHECK(equal_up_to_sign(pg.col(c), permuted, 1e-8));
  }
}

TEST_CASE("median heuristic") {
  const std::vector<FeatureVector> f{{0.0}, {1.0}, {3.0}};
  // Squared distances 1, 4, 9: median 4, length 1.
  CHECK(default_gamma(f) == doctest::Approx(1.0 / 8.0));
  const std::vector<FeatureVector> g{{0.0}, {0.0}, {0.0}, {2.0}};
  // Median of {0, 0, 0, 4, 4, 4} is 2.
  CHECK(default_gamma(g) == doctest::Approx(1.0 / 4.0));
  const std::vector<FeatureVector> h{{0.0}, {0.0}, {0.0}, {0.0}, {2.0}};
  // Median zero falls back to the mean 16 / 10.
  CHECK(default_gamma(h) == doctest::Approx(1.0 / (2.0 * 1.6)));
  CHECK(default_gamma({{1.0}, {1.0}}) == 1.0);
}

TEST_CASE("split and score") {
  CHECK(classify_by_split({-1, -0.9, 0.9, 1}) == std::vector<int>{0, 0, 1, 1});
  CHECK(classify_by_split({-2, 0.1, -0.1, 2}) == std::vector<int>{0, 1, 0, 1});
  CHECK(error_kind([] { classify_by_split({0.3, 0.3, 0.3}); }) == Error::Kind::Degenerate);
  CHECK(score_accuracy({1, 1, 0, 0}, {0, 0, 1, 1}) == 1.0);
  CHECK(score_accuracy({1, 0, 0, 0}, {1, 1, 0, 0}) == 0.75);
  CHECK(error_kind([] { score_accuracy({1, 0}, {1}); }) == Error::Kind::InvalidDimension);
  Rng rng(13);
  std::vector<int> labels(20000);
  std::vector<int> truth(20000);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    labels[i] = rng.bernoulli(0.5);
    truth[i] = rng.bernoulli(0.5);
  }
  CHECK(std::abs(score_accuracy(labels, truth) - 0.5) < 0.02);
}

TEST_CASE("quantum-enhanced data separates the classes at n = 6") {
  const Pipeline p = simulate(6, Strategy::QuantumEnhanced, 100, 1000, 17);
  const std::vector<double> comp1 = first_component(p);
  double lo[2] = {1e300, 1e300};
  double hi[2] = {-1e300, -1e300};
  for (std::size_t i = 0; i < comp1.size(); ++i) {
    lo[p.truth[i]] = std::min(lo[p.truth[i]], comp1[i]);
    hi[p.truth[i]] = std::max(hi[p.truth[i]], comp1[i]);
  }
  CHECK((hi[0] < lo[1] || hi[1] < lo[0]));
  CHECK(pipeline_accuracy(p) == 1.0);
}

TEST_CASE("conventional data does not separate the classes at n = 10") {
  CHECK(pipeline_accuracy(simulate(10, Strategy::Conventional, 100, 1000, 19)) <= 0.75);
}

TEST_CASE("accuracy does not decrease with repetitions") {
  std::vector<double> acc;
  const std::size_t per_class = 40;
  for (std::size_t reps : {50u, 200u, 1000u}) acc.push_back(pipeline_accuracy(simulate(6, Strategy::QuantumEnhanced, per_class, reps, 23)));
  for (std::size_t i = 1; i < acc.size(); ++i) {
    const double total = 2.0 * per_class;
    const double se = std::sqrt((acc[i] * (1 - acc[i]) + acc[i - 1] * (1 - acc[i - 1])) / total);
    CHECK(acc[i] + 2 * se >= acc[i - 1]);
  }
}

}
