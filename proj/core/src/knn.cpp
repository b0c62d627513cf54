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

#include "ephad/detectors.hpp"

namespace ephad {

KnnDistanceModel knn_fit(const Matrix& reference, std::size_t k) {
  if (k == 0 || k > reference.rows()) {
    throw DataError("k-NN neighbour count k=" + std::to_string(k) + " must satisfy 1 <= k <= " +
                    std::to_string(reference.rows()));
  }
  return {reference, k};
}

ScoreVector knn_distance_score(const KnnDistanceModel& model, const Matrix& queries) {
  if (model.k == 0 || model.k > model.reference.rows()) {
    throw DataError("k-NN neighbour count exceeds reference size");
  }
  if (queries.cols() != model.reference.cols()) throw DataError("k-NN query dimension mismatch");
  std::vector<double> out(queries.rows());
  std::vector<double> dist(model.reference.rows());
  for (std::size_t q = 0; q < queries.rows(); ++q) {
    for (std::size_t j = 0; j < dist.size(); ++j) {
      dist[j] = squared_distance(queries.row(q), model.reference.row(j));
    }
    const auto kth = dist.begin() + static_cast<std::ptrdiff_t>(model.k - 1);
    std::nth_element(dist.begin(), kth, dist.end());
    out[q] = std::sqrt(*kth);
  }
  return {std::move(out), Orientation::kAnomalyHigh, "knn"};
}

}  // namespace ephad
