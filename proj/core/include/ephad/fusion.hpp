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

#ifndef EPHAD_FUSION_HPP_
#define EPHAD_FUSION_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "ephad/data.hpp"

namespace ephad {

struct FusionConfig {
  double beta = 0.5;
  Normalization normalization = Normalization::kZScore;

  void validate() const;
};

// Revised inlier score: norm(s_in) + norm(T) / beta, where both inputs are
// first reoriented to InlierHigh. The result is InlierHigh.
ScoreVector fuse_scores(const ScoreVector& base, const ScoreVector& evidence,
                        const FusionConfig& config);

struct DetectorThreshold {
  double lambda = 0.0;
};

// Normal iff the inlier score is >= lambda.
std::vector<Label> revised_detector(const ScoreVector& inlier_scores,
                                    const DetectorThreshold& threshold);

// ---------------------------------------------------------------------------
// Discrete-density verification path for the tilting construction.
// ---------------------------------------------------------------------------

class DiscreteDensity {
 public:
  // Normalises non-negative weights. Throws when the total mass is zero.
  static DiscreteDensity from_weights(std::vector<double> weights);

  const std::vector<double>& probabilities() const { return p_; }
  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t k) const { return p_[k]; }

 private:
  explicit DiscreteDensity(std::vector<double> p) : p_(std::move(p)) {}
  std::vector<double> p_;
};

// Midpoint grid on [lo, hi] with `cells` cells.
std::vector<double> midpoint_grid(double lo, double hi, std::size_t cells);

// Discretises a density evaluated at grid midpoints.
DiscreteDensity discretize(std::span<const double> density_values);

// p_k * exp(T_k / beta), renormalised (max-shifted before exponentiation).
DiscreteDensity tilt_density(const DiscreteDensity& base, std::span<const double> evidence,
                             double beta);

// sum p log(p/q), with 0 log 0 = 0. Throws if p_k > 0 where q_k = 0.
double kl_divergence(const DiscreteDensity& p, const DiscreteDensity& q);

// log sum_k p_k exp(T_k / beta), computed stably.
double log_tilt_normalizer(const DiscreteDensity& base, std::span<const double> evidence,
                           double beta);

struct TiltImprovement {
  // E_{f+}[T/beta - log Z]; positive iff tilting moves the mixture towards f+.
  double condition_value = 0.0;
  double kl_before = 0.0;  // KL(f+ || f_mix)
  double kl_after = 0.0;   // KL(f+ || tilt(f_mix))
};

TiltImprovement lemma1_condition(const DiscreteDensity& f_plus, const DiscreteDensity& f_mix,
                                 std::span<const double> evidence, double beta);

// E_q[T] - beta * KL(q || base); maximised over q by tilt_density(base, T, beta).
double kl_objective(const DiscreteDensity& candidate, const DiscreteDensity& base,
                    std::span<const double> evidence, double beta);

}  // namespace ephad

#endif  // EPHAD_FUSION_HPP_
