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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ephad/detectors.hpp"

namespace ephad {
namespace {

constexpr double kEulerGamma = 0.5772156649;

class TreeBuilder {
 public:
  TreeBuilder(const Matrix& data, std::size_t max_depth, Engine& engine)
      : data_(data), max_depth_(max_depth), engine_(engine) {}

  IsolationTree build(std::vector<std::size_t> rows) {
    IsolationTree tree;
    grow(tree, std::move(rows), 0);
    return tree;
  }

 private:
  std::int32_t grow(IsolationTree& tree, std::vector<std::size_t> rows, std::size_t depth) {
    const auto id = static_cast<std::int32_t>(tree.nodes.size());
    tree.nodes.push_back(IsolationNode{-1, 0.0, -1, -1, rows.size(), depth});
    if (rows.size() <= 1 || depth >= max_depth_) return id;

    // Features with spread in this node; none means all rows are duplicates.
    std::vector<std::size_t> splittable;
    std::vector<std::pair<double, double>> ranges(data_.cols());
    for (std::size_t f = 0; f < data_.cols(); ++f) {
      double lo = data_(rows[0], f);
      double hi = lo;
      for (std::size_t r : rows) {
        lo = std::min(lo, data_(r, f));
        hi = std::max(hi, data_(r, f));
      }
      ranges[f] = {lo, hi};
      if (hi > lo) splittable.push_back(f);
    }
    if (splittable.empty()) return id;

    std::uniform_int_distribution<std::size_t> pick(0, splittable.size() - 1);
    const std::size_t feature = splittable[pick(engine_)];
    const auto [lo, hi] = ranges[feature];
    double threshold = lo;
    if (std::nextafter(lo, hi) == hi) {
      // No representable value strictly inside; hi still separates the two.
      threshold = hi;
    } else {
      std::uniform_real_distribution<double> draw(lo, hi);
      while (!(threshold > lo && threshold < hi)) threshold = draw(engine_);
    }

    std::vector<std::size_t> left;
    std::vector<std::size_t> right;
    for (std::size_t r : rows) (data_(r, feature) < threshold ? left : right).push_back(r);
    rows.clear();
    rows.shrink_to_fit();

    tree.nodes[id].feature = static_cast<int>(feature);
    tree.nodes[id].threshold = threshold;
    const auto l = grow(tree, std::move(left), depth + 1);
    tree.nodes[id].left = l;
    const auto r = grow(tree, std::move(right), depth + 1);
    tree.nodes[id].right = r;
    return id;
  }

  const Matrix& data_;
  std::size_t max_depth_;
  Engine& engine_;
};

double path_length(const IsolationTree& tree, std::span<const double> x) {
  std::size_t node = 0;
  for (;;) {
    const auto& n = tree.nodes[node];
    if (n.feature < 0) return static_cast<double>(n.depth) + average_path_length(n.size);
    node = static_cast<std::size_t>(x[static_cast<std::size_t>(n.feature)] < n.threshold ? n.left
                                                                                          : n.right);
  }
}

}  // namespace

std::size_t IsolationTree::depth() const {
  std::size_t d = 0;
  for (const auto& n : nodes) d = std::max(d, n.depth);
  return d;
}

double average_path_length(std::size_t n) {
  if (n <= 1) return 0.0;
  const double nd = static_cast<double>(n);
  return 2.0 * (std::log(nd - 1.0) + kEulerGamma) - 2.0 * (nd - 1.0) / nd;
}

IsolationForest iforest_fit(const Matrix& data, const IsolationForestOptions& options,
                            const SeedStream& seed) {
  if (options.tree_count == 0) throw DataError("isolation forest needs at least one tree");
  if (options.subsample_size < 2) throw DataError("isolation forest subsample size must be >= 2");
  if (data.rows() < 2) throw DataError("isolation forest needs at least two points");

  const std::size_t psi = options.subsample_size;
  IsolationForest forest;
  forest.subsample_size = psi;
  forest.max_depth = static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(psi))));
  forest.dim = data.cols();
  forest.trees.reserve(options.tree_count);

  const std::size_t n = data.rows();
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  for (std::size_t t = 0; t < options.tree_count; ++t) {
    Engine engine = seed.child("tree", t).engine();
    std::vector<std::size_t> rows;
    rows.reserve(psi);
    if (n >= psi) {
      std::sample(all.begin(), all.end(), std::back_inserter(rows), psi, engine);
    } else {
      std::uniform_int_distribution<std::size_t> pick(0, n - 1);
      for (std::size_t i = 0; i < psi; ++i) rows.push_back(pick(engine));
    }
    forest.trees.push_back(TreeBuilder(data, forest.max_depth, engine).build(std::move(rows)));
  }
  return forest;
}

IsolationForest iforest_fit(const TabularDataset& data, const IsolationForestOptions& options,
                            const SeedStream& seed) {
  return iforest_fit(data.features(), options, seed);
}

std::vector<double> iforest_path_lengths(const IsolationForest& model, const Matrix& queries) {
  if (queries.cols() != model.dim) {
    throw DataError("isolation forest query dimension " + std::to_string(queries.cols()) +
                    " does not match model dimension " + std::to_string(model.dim));
  }
  std::vector<double> out(queries.rows(), 0.0);
  for (std::size_t q = 0; q < queries.rows(); ++q) {
    double sum = 0.0;
    for (const auto& tree : model.trees) sum += path_length(tree, queries.row(q));
    out[q] = sum / static_cast<double>(model.trees.size());
  }
  return out;
}

ScoreVector iforest_score(const IsolationForest& model, const Matrix& queries) {
  auto lengths = iforest_path_lengths(model, queries);
  const double norm = average_path_length(model.subsample_size);
  for (double& h : lengths) h = std::exp2(-h / norm);
  return {std::move(lengths), Orientation::kAnomalyHigh, "iforest"};
}

}  // namespace ephad
