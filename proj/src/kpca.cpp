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

#include "qlab/kpca.hpp"

#include <algorithm>
#include <cmath>

#include "qlab/errors.hpp"

namespace qlab {

namespace {

double sq_distance(const FeatureVector& a, const FeatureVector& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

void check_lengths(const std::vector<FeatureVector>& features) {
  if (features.size() < 2) throw validation_error("kernel PCA needs at least two feature vectors");
  for (const FeatureVector& f : features) {
    if (f.size() != features.front().size()) throw dimension_error("feature vectors differ in length");
  }
}

}  // namespace

FeatureVector build_features(const OutcomeMatrix& m) {
  const std::size_t rows = m.rows();
  if (rows < 2) throw validation_error("features need at least two repetitions");
  const std::size_t w = m.width;
  FeatureVector f(2 * w, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t j = 0; j < w; ++j) f[j] += m.at(r, j);
  }
  for (std::size_t j = 0; j < w; ++j) {
    const double mean = f[j] / static_cast<double>(rows);
    f[j] = mean;
    // Bits are 0/1, so (1/R) sum (b - mean)^2 = mean (1 - mean).
    f[w + j] = mean * (1.0 - mean);
  }
  return f;
}

double default_gamma(const std::vector<FeatureVector>& features) {
  check_lengths(features);
  std::vector<double> d;
  d.reserve(features.size() * (features.size() - 1) / 2);
  for (std::size_t i = 0; i < features.size(); ++i)
    for (std::size_t j = i + 1; j < features.size(); ++j) d.push_back(sq_distance(features[i], features[j]));
  std::sort(d.begin(), d.end());
  const std::size_t k = d.size() / 2;
  double scale = d.size() % 2 ? d[k] : 0.5 * (d[k - 1] + d[k]);
  if (scale <= 0.0) {
    double sum = 0.0;
    for (double v : d) sum += v;
    scale = sum / static_cast<double>(d.size());
  }
  if (scale <= 0.0) return 1.0;
  const double len = static_cast<double>(features.front().size());
  return 1.0 / (2.0 * len * scale);
}

KernelModel fit_kernel_pca(const std::vector<FeatureVector>& features, double gamma, std::size_t d) {
  check_lengths(features);
  if (!(gamma > 0.0)) throw validation_error("kernel bandwidth must be positive");
  const auto count = static_cast<Eigen::Index>(features.size());
  if (d == 0 || d > features.size()) throw validation_error("projection dimension must be in [1, count]");

  KernelModel model;
  model.gamma = gamma;
  model.training = features;
  model.dims = d;
  model.kernel.resize(count, count);
  for (Eigen::Index i = 0; i < count; ++i) {
    model.kernel(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < count; ++j) {
      const double k = std::exp(-gamma * sq_distance(features[i], features[j]));
      model.kernel(i, j) = k;
      model.kernel(j, i) = k;
    }
  }
  model.kernel_col_mean = model.kernel.colwise().mean().transpose();
  model.kernel_mean = model.kernel_col_mean.mean();

  Eigen::MatrixXd centered = model.kernel;
  centered.rowwise() -= model.kernel_col_mean.transpose();
  centered.colwise() -= model.kernel_col_mean;
  centered.array() += model.kernel_mean;

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(centered);
  if (solver.info() != Eigen::Success) throw Error(Error::Kind::NonConvergence, "kernel eigendecomposition failed");
  // Eigen sorts ascending; flip to descending.
  model.eigenvalues = solver.eigenvalues().reverse();
  model.eigenvectors = solver.eigenvectors().rowwise().reverse();
  for (Eigen::Index c = 0; c < count; ++c) {
    Eigen::Index arg = 0;
    model.eigenvectors.col(c).cwiseAbs().maxCoeff(&arg);
    if (model.eigenvectors(arg, c) < 0.0) model.eigenvectors.col(c) *= -1.0;
  }

  const double tol = 1e-10 * std::max(1.0, model.eigenvalues(0));
  model.rank = 0;
  for (std::size_t c = 0; c < d; ++c) {
    if (model.eigenvalues(static_cast<Eigen::Index>(c)) > tol) ++model.rank;
  }
  return model;
}

std::vector<double> project(const KernelModel& model, const FeatureVector& f) {
  if (model.training.empty()) throw validation_error("kernel model is not fitted");
  if (f.size() != model.training.front().size()) throw dimension_error("feature length does not match model");
  const auto count = static_cast<Eigen::Index>(model.training.size());
  Eigen::VectorXd k(count);
  for (Eigen::Index j = 0; j < count; ++j) k(j) = std::exp(-model.gamma * sq_distance(f, model.training[j]));
  const double kmean = k.mean();
  const Eigen::VectorXd kc = (k.array() - kmean - model.kernel_col_mean.array() + model.kernel_mean).matrix();
  std::vector<double> out(model.dims, 0.0);
  for (std::size_t c = 0; c < model.rank; ++c) {
    const auto ci = static_cast<Eigen::Index>(c);
    out[c] = kc.dot(model.eigenvectors.col(ci)) / std::sqrt(model.eigenvalues(ci));
  }
  return out;
}

Eigen::MatrixXd training_projections(const KernelModel& model) {
  const auto count = static_cast<Eigen::Index>(model.training.size());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(count, static_cast<Eigen::Index>(model.dims));
  for (std::size_t c = 0; c < model.rank; ++c) {
    const auto ci = static_cast<Eigen::Index>(c);
    out.col(ci) = model.eigenvectors.col(ci) * std::sqrt(model.eigenvalues(ci));
  }
  return out;
}

std::vector<int> classify_by_split(const std::vector<double>& coords) {
  if (coords.size() < 2) throw validation_error("split needs at least two points");
  const auto [lo, hi] = std::minmax_element(coords.begin(), coords.end());
  if (*lo == *hi) throw Error(Error::Kind::Degenerate, "all coordinates are equal; no split exists");
  const double threshold = 0.5 * (*lo + *hi);
  std::vector<int> labels(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) labels[i] = coords[i] > threshold ? 1 : 0;
  return labels;
}

double score_accuracy(const std::vector<int>& labels, const std::vector<int>& truth) {
  if (labels.size() != truth.size()) throw dimension_error("label and truth lengths differ");
  if (labels.empty()) throw validation_error("no labels to score");
  std::size_t match = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) match += (labels[i] != 0) == (truth[i] != 0) ? 1 : 0;
  const double frac = static_cast<double>(match) / static_cast<double>(labels.size());
  return std::max(frac, 1.0 - frac);
}

}  // namespace qlab
