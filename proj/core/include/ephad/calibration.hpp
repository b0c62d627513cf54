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

#ifndef EPHAD_CALIBRATION_HPP_
#define EPHAD_CALIBRATION_HPP_

#include <cstddef>
#include <vector>

#include "ephad/data.hpp"
#include "ephad/fusion.hpp"

namespace ephad {

// Posterior-mean inlier probabilities under a Beta(1, 1) prior on P(S <= s).
struct InlierProbabilities {
  std::vector<double> p_inlier;  // each strictly inside (0, 1)
  std::size_t n_reference = 0;

  double p_outlier(std::size_t i) const { return 1.0 - p_inlier[i]; }
};

struct AdaConfig {
  double delta = 1e-12;

  void validate() const;
};

// For each score s: t = #{s' in reference : s' <= s}, n = |reference|,
// p_inlier = 1 - (1 + t) / (2 + n). Both inputs are reoriented to
// AnomalyHigh first, so larger anomaly scores give smaller inlier
// probabilities.
InlierProbabilities inlier_probability(const ScoreVector& scores, const ScoreVector& reference);

// Self-referenced form used at test time: the batch is its own posterior sample.
InlierProbabilities inlier_probability(const ScoreVector& scores);

// Sum over samples of the binary entropy (natural log).
double binary_entropy_sum(const InlierProbabilities& probs);

// H(evidence) / (H(base) + delta).
double beta_ada(const ScoreVector& base, const ScoreVector& evidence, const AdaConfig& config = {});

struct AdaptiveFusion {
  ScoreVector scores;
  double beta_used;
};

// fuse_scores with beta = beta_ada(base, evidence); `config.beta` is ignored.
AdaptiveFusion fuse_ada(const ScoreVector& base, const ScoreVector& evidence,
                        const FusionConfig& config, const AdaConfig& ada = {});

}  // namespace ephad

#endif  // EPHAD_CALIBRATION_HPP_
