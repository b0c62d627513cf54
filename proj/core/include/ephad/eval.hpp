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

#ifndef EPHAD_EVAL_HPP_
#define EPHAD_EVAL_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ephad/data.hpp"

namespace ephad {

// Probability that a random anomalous sample outranks a random normal one,
// ties counted as 1/2 (Mann-Whitney U with midranks). Scores are reoriented
// to AnomalyHigh first. Throws when only one class is present.
double auroc(const ScoreVector& scores, std::span<const Label> labels);

// Kendall tau-a: (concordant - discordant) / (n choose 2); tied pairs count 0.
double kendall_tau(std::span<const double> a, std::span<const double> b);
double kendall_tau(const ScoreVector& a, const ScoreVector& b);

enum class Method { kBlind, kEvidenceOnly, kEphad, kEphadAda, kRefine };

std::string to_string(Method method);
Method parse_method(const std::string& text);

// One evaluated (dataset, detector, evidence, method, beta, epsilon, seed) point.
struct ExperimentCell {
  std::string dataset;
  std::string detector;
  std::string evidence;
  Method method = Method::kBlind;
  double beta_nominal = 0.0;  // beta grid value this cell belongs to
  double beta_used = 0.0;     // beta applied: grid value, beta_ada, or 0 when unused
  double epsilon = 0.0;
  double realized_epsilon = 0.0;
  double test_fraction = 0.0;  // anomaly share of the test set (grid value when swept)
  std::uint64_t seed = 0;
  double auroc = 0.0;
};

struct AggregateRow {
  std::string dataset;
  std::string detector;
  std::string evidence;
  Method method = Method::kBlind;
  double beta_nominal = 0.0;
  double epsilon = 0.0;
  double test_fraction = 0.0;
  std::size_t n_seeds = 0;
  double mean_auroc = 0.0;
  double standard_error = 0.0;  // sample std / sqrt(n); 0 with se_defined=false for one seed
  bool se_defined = false;
};

// Groups cells by (dataset, detector, evidence, method, beta_nominal,
// epsilon, test_fraction); rows come out in lexicographic key order.
std::vector<AggregateRow> aggregate(std::span<const ExperimentCell> cells);

}  // namespace ephad

#endif  // EPHAD_EVAL_HPP_
