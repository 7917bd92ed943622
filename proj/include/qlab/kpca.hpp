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
#include <vector>

#include <Eigen/Dense>

#include "qlab/dynamics.hpp"

namespace qlab {

/// Per-bit means followed by per-bit variances (2 * width values).
using FeatureVector = std::vector<double>;

/// Requires at least two rows.
FeatureVector build_features(const OutcomeMatrix& m);

/// 1 / (2 * len * median pairwise squared distance). Falls back to the mean
/// distance, then to 1, when the median is zero.
double default_gamma(const std::vector<FeatureVector>& features);

struct KernelModel {
  double gamma = 1.0;
  std::vector<FeatureVector> training;
  Eigen::MatrixXd kernel;           // uncentered training kernel
  Eigen::VectorXd kernel_col_mean;  // column means of `kernel`
  double kernel_mean = 0.0;
  Eigen::VectorXd eigenvalues;      // all eigenvalues of the centered kernel, descending
  Eigen::MatrixXd eigenvectors;     // unit-norm columns matching `eigenvalues`
  std::size_t dims = 1;
  /// Number of retained components with a positive eigenvalue. Zero when all
  /// inputs coincide; projections are then identically zero.
  std::size_t rank = 0;

  bool degenerate() const { return rank == 0; }
};

/// Gaussian kernel exp(-gamma |f_i - f_j|^2), double-centered and
/// eigendecomposed. Each eigenvector is signed so that its largest-magnitude
/// entry is positive.
KernelModel fit_kernel_pca(const std::vector<FeatureVector>& features, double gamma, std::size_t d);

/// Out-of-sample projection onto the first `model.dims` components.
std::vector<double> project(const KernelModel& model, const FeatureVector& f);

/// Coordinates of every training vector (rows) on the retained components.
Eigen::MatrixXd training_projections(const KernelModel& model);

/// Threshold at (min + max) / 2; label 1 above, 0 otherwise. Throws
/// Degenerate when all coordinates are equal.
std::vector<int> classify_by_split(const std::vector<double>& coords);

/// Fraction of matches, maximized over the two label polarities.
double score_accuracy(const std::vector<int>& labels, const std::vector<int>& truth);

}  // namespace qlab
