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

#ifndef EPHAD_CONTAMINATION_HPP_
#define EPHAD_CONTAMINATION_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "ephad/data.hpp"
#include "ephad/rng.hpp"

namespace ephad {

struct GaussianComponent {
  std::vector<double> mean;
  double variance = 1.0;  // isotropic: covariance = variance * I
};

struct GaussianMixtureSpec {
  std::vector<GaussianComponent> components;
  std::vector<double> weights;

  void validate() const;
  Matrix sample(std::size_t count, Engine& engine) const;
  double density(std::span<const double> x) const;
};

// Normal class N([1,1], 0.07 I).
GaussianMixtureSpec toy_normal_spec();
// Anomaly class 0.5 N([-0.25,2.5], 0.03 I) + 0.5 N([-1,0.5], 0.03 I).
GaussianMixtureSpec toy_anomaly_spec();

// Labelled toy sample: normals first, then anomalies.
TabularDataset sample_toy(std::size_t n_normal, std::size_t n_anomalous, const SeedStream& seed);

enum class ContaminationProtocol { kOverlap, kNonOverlap, kSyntheticNoise };

ContaminationProtocol parse_protocol(const std::string& text);
std::string to_string(ContaminationProtocol protocol);

struct ContaminationSpec {
  double epsilon = 0.1;
  ContaminationProtocol protocol = ContaminationProtocol::kSyntheticNoise;
  // Per-feature noise std for the synthetic protocol, as a multiple of the
  // per-feature std of the normal training rows.
  double noise_sigma_factor = 3.0;

  void validate() const;
};

// Anomalies needed so that a / (m + a) ~= epsilon: round-half-up of
// epsilon * m / (1 - epsilon).
std::size_t required_anomaly_count(std::size_t normal_count, double epsilon);

class ContaminatedSplit {
 public:
  ContaminatedSplit(TabularDataset train, TabularDataset test,
                    std::vector<std::size_t> injected_test_rows, double realized_epsilon);

  // Training view handed to detectors: labels stripped.
  TabularDataset train() const { return train_.without_labels(); }
  const TabularDataset& test() const { return test_; }
  // Rows of the original test set used as contamination sources.
  const std::vector<std::size_t>& injected_test_rows() const { return injected_; }
  double realized_epsilon() const { return realized_epsilon_; }

  // Hidden train labels, for audits and tests only.
  const std::vector<Label>& audit_train_labels() const { return *train_.labels(); }

 private:
  TabularDataset train_;
  TabularDataset test_;
  std::vector<std::size_t> injected_;
  double realized_epsilon_;
};

// Builds the contaminated training set from clean training normals and the
// labelled test set:
//   overlap         train += sampled test anomalies; test unchanged
//   non_overlap     as overlap, but the sampled anomalies leave the test set
//   synthetic_noise train += noisy copies of test anomalies (sampled with
//                   replacement); test unchanged
ContaminatedSplit contaminate_train(const TabularDataset& normals, const TabularDataset& test,
                                    const ContaminationSpec& spec, const SeedStream& seed);

struct SyntheticAnomalies {
  TabularDataset data;                   // labelled anomalous
  std::vector<std::size_t> source_rows;  // row of `sources` each output was copied from
};

// `count` rows resampled with replacement from `sources`, plus independent
// N(0, sigma_j^2) noise per feature j.
SyntheticAnomalies synthetic_anomalies(const TabularDataset& sources,
                                       std::span<const double> sigma_per_feature,
                                       std::size_t count, const SeedStream& seed);
SyntheticAnomalies synthetic_anomalies(const TabularDataset& sources, double sigma,
                                       std::size_t count, const SeedStream& seed);

// Stratified split of a labelled dataset: `train_share` of the normals go to
// training (order shuffled), every anomaly and the remaining normals to test.
struct TrainTestSplit {
  TabularDataset train_normals;
  TabularDataset test;
  std::vector<std::size_t> test_rows;  // row of `data` behind each test row
};
TrainTestSplit split_normals(const TabularDataset& data, double train_share,
                             const SeedStream& seed);

// Rows of `test` forming a subsample of `size` rows with
// round(fraction * size) anomalies (normals first, then anomalies).
std::vector<std::size_t> recompose_test(const TabularDataset& test, double anomaly_fraction,
                                        std::size_t size, const SeedStream& seed);

}  // namespace ephad

#endif  // EPHAD_CONTAMINATION_HPP_
