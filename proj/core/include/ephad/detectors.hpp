/*
 * Copyright 2026 The EPHAD Toolkit Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef EPHAD_DETECTORS_HPP_
#define EPHAD_DETECTORS_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "ephad/data.hpp"
#include "ephad/rng.hpp"

namespace ephad {

// ---------------------------------------------------------------------------
// Local outlier factor
// ---------------------------------------------------------------------------

// Reach distances are floored at this value so exact duplicates keep a
// finite local reachability density.
inline constexpr double kMinReachDistance = 1e-12;

struct LofModel {
  Matrix reference;
  std::size_t k = 0;
  // Per reference point, computed with the point excluded from its own
  // neighbourhood.
  std::vector<double> k_distance;
  std::vector<double> lrd;
};

// Requires 1 <= k < m (m = number of reference points).
LofModel lof_fit(const Matrix& reference, std::size_t k);
LofModel lof_fit(const TabularDataset& data, std::size_t k);

// LOF of arbitrary query points against the reference set. A query is not
// excluded from its own neighbourhood even if it coincides with a reference
// point; use lof_score_reference for the transductive case.
ScoreVector lof_score(const LofModel& model, const Matrix& queries);

// LOF of every reference point, each excluded from its own neighbourhood.
// This is the transductive evidence path (fit set = score set).
ScoreVector lof_score_reference(const LofModel& model);

// ---------------------------------------------------------------------------
// Isolation forest
// ---------------------------------------------------------------------------

struct IsolationNode {
  // Leaf when feature < 0.
  int feature = -1;
  double threshold = 0.0;
  std::int32_t left = -1;
  std::int32_t right = -1;
  std::size_t size = 0;
  std::size_t depth = 0;
};

struct IsolationTree {
  std::vector<IsolationNode> nodes;  // nodes[0] is the root
  std::size_t depth() const;
};

struct IsolationForest {
  std::vector<IsolationTree> trees;
  std::size_t subsample_size = 0;
  std::size_t max_depth = 0;
  std::size_t dim = 0;
};

struct IsolationForestOptions {
  std::size_t tree_count = 100;
  std::size_t subsample_size = 256;
};

// Average path length of an unsuccessful BST search over n points:
// c(n) = 2 H(n-1) - 2(n-1)/n with H(i) = ln(i) + 0.5772156649; c(0) = c(1) = 0.
double average_path_length(std::size_t n);

IsolationForest iforest_fit(const Matrix& data, const IsolationForestOptions& options,
                            const SeedStream& seed);
IsolationForest iforest_fit(const TabularDataset& data, const IsolationForestOptions& options,
                            const SeedStream& seed);

// Mean path length E(h(x)) over trees, including the c(size) leaf adjustment.
std::vector<double> iforest_path_lengths(const IsolationForest& model, const Matrix& queries);

// 2^(-E(h(x)) / c(subsample_size)), in (0, 1).
ScoreVector iforest_score(const IsolationForest& model, const Matrix& queries);

// ---------------------------------------------------------------------------
// k-NN distance
// ---------------------------------------------------------------------------

struct KnnDistanceModel {
  Matrix reference;
  std::size_t k = 1;
};

KnnDistanceModel knn_fit(const Matrix& reference, std::size_t k);

// Euclidean distance to the k-th nearest reference point.
ScoreVector knn_distance_score(const KnnDistanceModel& model, const Matrix& queries);

// ---------------------------------------------------------------------------
// RBF-network one-class model (DeepSVDD with a single RBF layer)
// ---------------------------------------------------------------------------

inline constexpr std::size_t kRbfUnits = 3;
using Point2 = std::array<double, 2>;
using RbfCenters = std::array<Point2, kRbfUnits>;

// Trainable parameters. Scales are stored as logs so they stay positive.
struct RbfSvddParams {
  std::array<double, kRbfUnits> log_scale{};
  std::array<double, kRbfUnits> weight{};
  double bias = 0.0;
  double center = 0.0;

  static constexpr std::size_t kCount = 2 * kRbfUnits + 2;
  std::array<double, kCount> flatten() const;
  static RbfSvddParams unflatten(const std::array<double, kCount>& flat);
};

struct RbfSvddModel {
  RbfCenters centers{};
  RbfSvddParams params;
};

struct RbfSvddOptions {
  std::size_t epochs = 200;
  std::size_t batch_size = 25;
  double learning_rate = 0.01;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
};

struct RbfSvddFit {
  RbfSvddModel model;
  std::vector<double> epoch_loss;  // full-data loss after each epoch
};

struct LossAndGradient {
  double loss = 0.0;
  std::array<double, RbfSvddParams::kCount> gradient{};
};

// Means of the three toy mixture components.
RbfCenters default_rbf_centers();

// Untrained model with randomly initialised parameters.
RbfSvddModel rbf_svdd_init(const RbfCenters& centers, const SeedStream& seed);

double rbf_network_output(const RbfSvddModel& model, std::span<const double> x);

// Mean over rows of (net(x) - center)^2 and its analytic gradient.
LossAndGradient rbf_svdd_loss_gradient(const RbfCenters& centers, const RbfSvddParams& params,
                                       const Matrix& batch);

// Adam on shuffled mini-batches. Requires 2-D input.
RbfSvddFit rbf_svdd_fit(const Matrix& data, const RbfCenters& centers,
                        const RbfSvddOptions& options, const SeedStream& seed);
RbfSvddFit rbf_svdd_fit(const TabularDataset& data, const RbfCenters& centers,
                        const RbfSvddOptions& options, const SeedStream& seed);

// Squared distance of the network output to the learned centre.
ScoreVector rbf_svdd_score(const RbfSvddModel& model, const Matrix& queries);

}  // namespace ephad

#endif  // EPHAD_DETECTORS_HPP_
