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

#include "ephad/fusion.hpp"

#include <algorithm>
#include <cmath>

namespace ephad {
namespace {

void require_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw ConfigError("temperature beta must be positive and finite, got " + std::to_string(beta));
  }
}

void require_aligned(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DataError(std::string(what) + ": support sizes differ (" + std::to_string(a) + " vs " +
                    std::to_string(b) + ")");
  }
}

// Neumaier summation; normalised densities are checked to 1e-12.
double compensated_sum(std::span<const double> values) {
  double sum = 0.0;
  double carry = 0.0;
  for (double v : values) {
    const double t = sum + v;
    carry += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  return sum + carry;
}

}  // namespace

void FusionConfig::validate() const { require_beta(beta); }

ScoreVector fuse_scores(const ScoreVector& base, const ScoreVector& evidence,
                        const FusionConfig& config) {
  config.validate();
  if (base.size() != evidence.size()) {
    throw DataError("fusion inputs differ in length (" + std::to_string(base.size()) + " vs " +
                    std::to_string(evidence.size()) + ")");
  }
  const auto s_in = standardize(reorient(base, Orientation::kInlierHigh), config.normalization);
  const auto t_in =
      standardize(reorient(evidence, Orientation::kInlierHigh), config.normalization);
  std::vector<double> fused(base.size());
  for (std::size_t i = 0; i < fused.size(); ++i) fused[i] = s_in[i] + t_in[i] / config.beta;
  return {std::move(fused), Orientation::kInlierHigh, "ephad"};
}

std::vector<Label> revised_detector(const ScoreVector& inlier_scores,
                                    const DetectorThreshold& threshold) {
  const auto s = reorient(inlier_scores, Orientation::kInlierHigh);
  std::vector<Label> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    out[i] = s[i] >= threshold.lambda ? Label::kNormal : Label::kAnomalous;
  }
  return out;
}

DiscreteDensity DiscreteDensity::from_weights(std::vector<double> weights) {
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw DataError("density weights must be finite and >= 0");
  }
  const double total = compensated_sum(weights);
  if (!(total > 0.0)) throw DataError("density has zero total mass");
  for (double& w : weights) w /= total;
  return DiscreteDensity(std::move(weights));
}

std::vector<double> midpoint_grid(double lo, double hi, std::size_t cells) {
  if (cells == 0 || !(hi > lo)) throw ConfigError("grid needs hi > lo and at least one cell");
  std::vector<double> grid(cells);
  const double width = (hi - lo) / static_cast<double>(cells);
  for (std::size_t k = 0; k < cells; ++k) grid[k] = lo + (static_cast<double>(k) + 0.5) * width;
  return grid;
}

DiscreteDensity discretize(std::span<const double> density_values) {
  return DiscreteDensity::from_weights({density_values.begin(), density_values.end()});
}

DiscreteDensity tilt_density(const DiscreteDensity& base, std::span<const double> evidence,
                             double beta) {
  require_beta(beta);
  require_aligned(base.size(), evidence.size(), "tilt_density");
  double shift = -INFINITY;
  for (std::size_t k = 0; k < base.size(); ++k) {
    if (base[k] > 0.0) shift = std::max(shift, evidence[k] / beta);
  }
  bool flat = true;
  std::vector<double> w(base.size(), 0.0);
  for (std::size_t k = 0; k < base.size(); ++k) {
    if (base[k] > 0.0) {
      w[k] = base[k] * std::exp(evidence[k] / beta - shift);
      flat = flat && evidence[k] / beta == shift;
    }
  }
  // A constant tilt cancels in the normalisation; skip the rounding it would add.
  if (flat) return base;
  return DiscreteDensity::from_weights(std::move(w));
}

double kl_divergence(const DiscreteDensity& p, const DiscreteDensity& q) {
  require_aligned(p.size(), q.size(), "kl_divergence");
  double sum = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] == 0.0) continue;
    if (q[k] == 0.0) {
      throw DataError("KL divergence undefined: p > 0 where q = 0 at cell " + std::to_string(k));
    }
    sum += p[k] * std::log(p[k] / q[k]);
  }
  return std::max(sum, 0.0);
}

double log_tilt_normalizer(const DiscreteDensity& base, std::span<const double> evidence,
                           double beta) {
  require_beta(beta);
  require_aligned(base.size(), evidence.size(), "log_tilt_normalizer");
  double shift = -INFINITY;
  for (std::size_t k = 0; k < base.size(); ++k) {
    if (base[k] > 0.0) shift = std::max(shift, evidence[k] / beta);
  }
  // log(sum p e^x) = log1p(sum p (e^x - 1)) since p sums to one; exact for flat T.
  double sum = 0.0;
  for (std::size_t k = 0; k < base.size(); ++k) {
    if (base[k] > 0.0) sum += base[k] * std::expm1(evidence[k] / beta - shift);
  }
  return shift + std::log1p(sum);
}

TiltImprovement lemma1_condition(const DiscreteDensity& f_plus, const DiscreteDensity& f_mix,
                                 std::span<const double> evidence, double beta) {
  require_aligned(f_plus.size(), f_mix.size(), "lemma1_condition");
  const double log_z = log_tilt_normalizer(f_mix, evidence, beta);
  TiltImprovement out;
  for (std::size_t k = 0; k < f_plus.size(); ++k) {
    if (f_plus[k] > 0.0) out.condition_value += f_plus[k] * (evidence[k] / beta - log_z);
  }
  out.kl_before = kl_divergence(f_plus, f_mix);
  out.kl_after = kl_divergence(f_plus, tilt_density(f_mix, evidence, beta));
  return out;
}

double kl_objective(const DiscreteDensity& candidate, const DiscreteDensity& base,
                    std::span<const double> evidence, double beta) {
  require_beta(beta);
  require_aligned(candidate.size(), evidence.size(), "kl_objective");
  double expected = 0.0;
  for (std::size_t k = 0; k < candidate.size(); ++k) expected += candidate[k] * evidence[k];
  return expected - beta * kl_divergence(candidate, base);
}

}  // namespace ephad
