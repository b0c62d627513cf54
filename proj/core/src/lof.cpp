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
#include <optional>

#include "ephad/detectors.hpp"

namespace ephad {
namespace {

struct Neighbourhood {
  double k_distance = 0.0;
  std::vector<std::size_t> members;
  std::vector<double> distances;
};

// k-distance neighbourhood of `point` among the reference rows. Ties at the
// k-distance are all included, so |members| may exceed k.
Neighbourhood neighbourhood(const Matrix& reference, std::span<const double> point, std::size_t k,
                            std::optional<std::size_t> exclude) {
  const std::size_t m = reference.rows();
  std::vector<double> dist(m);
  for (std::size_t j = 0; j < m; ++j) dist[j] = euclidean_distance(point, reference.row(j));

  std::vector<double> candidates;
  candidates.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    if (exclude && *exclude == j) continue;
    candidates.push_back(dist[j]);
  }
  std::nth_element(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(k - 1),
                   candidates.end());
  Neighbourhood out;
  out.k_distance = candidates[k - 1];
  for (std::size_t j = 0; j < m; ++j) {
    if (exclude && *exclude == j) continue;
    if (dist[j] <= out.k_distance) {
      out.members.push_back(j);
      out.distances.push_back(dist[j]);
    }
  }
  return out;
}

double local_reachability_density(const Neighbourhood& hood, const std::vector<double>& k_distance) {
  double sum = 0.0;
  for (std::size_t i = 0; i < hood.members.size(); ++i) {
    sum += std::max({k_distance[hood.members[i]], hood.distances[i], kMinReachDistance});
  }
  return static_cast<double>(hood.members.size()) / sum;
}

double lof_ratio(const Neighbourhood& hood, double own_lrd, const std::vector<double>& lrd) {
  double sum = 0.0;
  for (std::size_t j : hood.members) sum += lrd[j];
  return sum / own_lrd / static_cast<double>(hood.members.size());
}

}  // namespace

LofModel lof_fit(const Matrix& reference, std::size_t k) {
  const std::size_t m = reference.rows();
  if (m < 2) throw DataError("LOF needs at least two reference points");
  if (k == 0 || k >= m) {
    throw DataError("LOF neighbour count k=" + std::to_string(k) + " must satisfy 1 <= k < " +
                    std::to_string(m));
  }
  LofModel model{reference, k, std::vector<double>(m), std::vector<double>(m)};
  std::vector<Neighbourhood> hoods;
  hoods.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    hoods.push_back(neighbourhood(reference, reference.row(i), k, i));
    model.k_distance[i] = hoods.back().k_distance;
  }
  for (std::size_t i = 0; i < m; ++i) {
    model.lrd[i] = local_reachability_density(hoods[i], model.k_distance);
  }
  return model;
}

LofModel lof_fit(const TabularDataset& data, std::size_t k) { return lof_fit(data.features(), k); }

ScoreVector lof_score(const LofModel& model, const Matrix& queries) {
  if (queries.cols() != model.reference.cols()) {
    throw DataError("LOF query dimension " + std::to_string(queries.cols()) +
                    " does not match model dimension " + std::to_string(model.reference.cols()));
  }
  std::vector<double> out(queries.rows());
  for (std::size_t q = 0; q < queries.rows(); ++q) {
    const auto hood = neighbourhood(model.reference, queries.row(q), model.k, std::nullopt);
    out[q] = lof_ratio(hood, local_reachability_density(hood, model.k_distance), model.lrd);
  }
  return {std::move(out), Orientation::kAnomalyHigh, "lof"};
}

ScoreVector lof_score_reference(const LofModel& model) {
  const std::size_t m = model.reference.rows();
  std::vector<double> out(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto hood = neighbourhood(model.reference, model.reference.row(i), model.k, i);
    out[i] = lof_ratio(hood, model.lrd[i], model.lrd);
  }
  return {std::move(out), Orientation::kAnomalyHigh, "lof"};
}

}  // namespace ephad
