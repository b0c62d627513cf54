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

#include "ephad/calibration.hpp"

#include <algorithm>
#include <cmath>

namespace ephad {

void AdaConfig::validate() const {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw ConfigError("delta must be positive");
}

InlierProbabilities inlier_probability(const ScoreVector& scores, const ScoreVector& reference) {
  if (reference.size() == 0) throw DataError("inlier probability needs a non-empty reference");
  const auto s = reorient(scores, Orientation::kAnomalyHigh);
  std::vector<double> sorted = reorient(reference, Orientation::kAnomalyHigh).values();
  std::sort(sorted.begin(), sorted.end());

  const double n = static_cast<double>(sorted.size());
  InlierProbabilities out{std::vector<double>(s.size()), sorted.size()};
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto t = static_cast<double>(std::upper_bound(sorted.begin(), sorted.end(), s[i]) -
                                       sorted.begin());
    // 1 - (1+t)/(2+n), with an integer numerator so the bounds are exact.
    out.p_inlier[i] = (1.0 + n - t) / (2.0 + n);
  }
  return out;
}

InlierProbabilities inlier_probability(const ScoreVector& scores) {
  return inlier_probability(scores, scores);
}

double binary_entropy_sum(const InlierProbabilities& probs) {
  double h = 0.0;
  for (double p : probs.p_inlier) {
    const double q = 1.0 - p;
    h -= p * std::log(p) + q * std::log(q);
  }
  return h;
}

double beta_ada(const ScoreVector& base, const ScoreVector& evidence, const AdaConfig& config) {
  config.validate();
  if (base.size() == 0 || evidence.size() == 0) throw DataError("beta_ada needs non-empty inputs");
  if (base.size() != evidence.size()) {
    throw DataError("beta_ada inputs differ in length (" + std::to_string(base.size()) + " vs " +
                    std::to_string(evidence.size()) + ")");
  }
  const double h_base = binary_entropy_sum(inlier_probability(base));
  const double h_evidence = binary_entropy_sum(inlier_probability(evidence));
  return h_evidence / (h_base + config.delta);
}

AdaptiveFusion fuse_ada(const ScoreVector& base, const ScoreVector& evidence,
                        const FusionConfig& config, const AdaConfig& ada) {
  FusionConfig chosen = config;
  chosen.beta = beta_ada(base, evidence, ada);
  auto fused = fuse_scores(base, evidence, chosen);
  return {std::move(fused), chosen.beta};
}

}  // namespace ephad
