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

#include "ephad/contamination.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace ephad {
namespace {

std::vector<std::size_t> rows_with_label(const TabularDataset& data, Label label) {
  std::vector<std::size_t> rows;
  if (!data.labels()) return rows;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if ((*data.labels())[i] == label) rows.push_back(i);
  }
  return rows;
}

std::vector<double> feature_std(const Matrix& m) {
  std::vector<double> sd(m.cols(), 0.0);
  if (m.rows() == 0) return sd;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) mean += m(i, j);
    mean /= static_cast<double>(m.rows());
    double ss = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) ss += (m(i, j) - mean) * (m(i, j) - mean);
    sd[j] = std::sqrt(ss / static_cast<double>(m.rows()));
  }
  return sd;
}

}  // namespace

void GaussianMixtureSpec::validate() const {
  if (components.empty() || components.size() != weights.size()) {
    throw ConfigError("mixture needs one weight per component");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw ConfigError("mixture weights must be non-negative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw ConfigError("mixture weights must sum to 1");
  for (const auto& c : components) {
    if (!(c.variance > 0.0)) throw ConfigError("mixture variances must be positive");
    if (c.mean.size() != components.front().mean.size()) {
      throw ConfigError("mixture components differ in dimension");
    }
  }
}

Matrix GaussianMixtureSpec::sample(std::size_t count, Engine& engine) const {
  validate();
  const std::size_t d = components.front().mean.size();
  Matrix out(count, d);
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::size_t i = 0; i < count; ++i) {
    const auto& c = components[components.size() == 1 ? 0 : pick(engine)];
    const double sd = std::sqrt(c.variance);
    for (std::size_t j = 0; j < d; ++j) out(i, j) = c.mean[j] + sd * normal(engine);
  }
  return out;
}

double GaussianMixtureSpec::density(std::span<const double> x) const {
  double total = 0.0;
  for (std::size_t c = 0; c < components.size(); ++c) {
    const auto& comp = components[c];
    const double d = static_cast<double>(comp.mean.size());
    const double r2 = squared_distance(x, comp.mean);
    total += weights[c] * std::exp(-0.5 * r2 / comp.variance) /
             std::pow(2.0 * std::numbers::pi * comp.variance, d / 2.0);
  }
  return total;
}

GaussianMixtureSpec toy_normal_spec() { return {{{{1.0, 1.0}, 0.07}}, {1.0}}; }

GaussianMixtureSpec toy_anomaly_spec() {
  return {{{{-0.25, 2.5}, 0.03}, {{-1.0, 0.5}, 0.03}}, {0.5, 0.5}};
}

TabularDataset sample_toy(std::size_t n_normal, std::size_t n_anomalous, const SeedStream& seed) {
  Engine normal_engine = seed.child("toy-normal").engine();
  Engine anomaly_engine = seed.child("toy-anomaly").engine();
  const Matrix normals = toy_normal_spec().sample(n_normal, normal_engine);
  const Matrix anomalies = toy_anomaly_spec().sample(n_anomalous, anomaly_engine);
  std::vector<double> values = normals.values();
  values.insert(values.end(), anomalies.values().begin(), anomalies.values().end());
  std::vector<Label> labels(n_normal, Label::kNormal);
  labels.resize(n_normal + n_anomalous, Label::kAnomalous);
  return {Matrix(n_normal + n_anomalous, 2, std::move(values)), std::move(labels), "toy2d"};
}

ContaminationProtocol parse_protocol(const std::string& text) {
  if (text == "overlap") return ContaminationProtocol::kOverlap;
  if (text == "non_overlap") return ContaminationProtocol::kNonOverlap;
  if (text == "synthetic_noise") return ContaminationProtocol::kSyntheticNoise;
  throw ConfigError("unknown contamination protocol '" + text + "'");
}

std::string to_string(ContaminationProtocol protocol) {
  switch (protocol) {
    case ContaminationProtocol::kOverlap: return "overlap";
    case ContaminationProtocol::kNonOverlap: return "non_overlap";
    case ContaminationProtocol::kSyntheticNoise: return "synthetic_noise";
  }
  return "overlap";
}

void ContaminationSpec::validate() const {
  if (!(epsilon >= 0.0 && epsilon < 1.0)) {
    throw ConfigError("contamination factor must lie in [0, 1), got " + std::to_string(epsilon));
  }
  if (protocol == ContaminationProtocol::kSyntheticNoise && !(noise_sigma_factor > 0.0)) {
    throw ConfigError("noise sigma factor must be positive");
  }
}

std::size_t required_anomaly_count(std::size_t normal_count, double epsilon) {
  if (!(epsilon >= 0.0 && epsilon < 1.0)) {
    throw ConfigError("contamination factor must lie in [0, 1)");
  }
  const double exact = epsilon * static_cast<double>(normal_count) / (1.0 - epsilon);
  // The 1e-9 nudge keeps values like 4.9999999999 from rounding below 5.
  return static_cast<std::size_t>(std::floor(exact + 0.5 + 1e-9));
}

ContaminatedSplit::ContaminatedSplit(TabularDataset train, TabularDataset test,
                                     std::vector<std::size_t> injected_test_rows,
                                     double realized_epsilon)
    : train_(std::move(train)),
      test_(std::move(test)),
      injected_(std::move(injected_test_rows)),
      realized_epsilon_(realized_epsilon) {
  if (!train_.labels()) throw DataError("contaminated training set must carry audit labels");
}

ContaminatedSplit contaminate_train(const TabularDataset& normals, const TabularDataset& test,
                                    const ContaminationSpec& spec, const SeedStream& seed) {
  spec.validate();
  if (normals.dim() != test.dim()) throw DataError("train and test widths differ");
  if (!test.labels()) throw DataError("contamination needs a labelled test set");

  const std::size_t m = normals.size();
  const std::size_t a = required_anomaly_count(m, spec.epsilon);
  const TabularDataset clean(normals.features(), std::vector<Label>(m, Label::kNormal),
                             normals.name());
  if (a == 0) return {clean, test, {}, 0.0};

  const auto anomaly_rows = rows_with_label(test, Label::kAnomalous);
  Engine engine = seed.child("contaminate").engine();
  const double realized = static_cast<double>(a) / static_cast<double>(m + a);

  if (spec.protocol == ContaminationProtocol::kSyntheticNoise) {
    if (anomaly_rows.empty()) throw DataError("synthetic contamination needs test anomalies");
    const auto sd = feature_std(normals.features());
    std::vector<double> sigma(sd.size());
    for (std::size_t j = 0; j < sd.size(); ++j) {
      // Constant features still get unit-scale noise.
      sigma[j] = spec.noise_sigma_factor * (sd[j] > 0.0 ? sd[j] : 1.0);
    }
    const auto sources = test.subset(anomaly_rows);
    auto noisy = synthetic_anomalies(sources, sigma, a, seed.child("synthetic"));
    std::vector<std::size_t> injected;
    injected.reserve(a);
    for (std::size_t r : noisy.source_rows) injected.push_back(anomaly_rows[r]);
    return {concat(clean, noisy.data), test, std::move(injected), realized};
  }

  if (a > anomaly_rows.size()) {
    throw DataError("contamination factor " + std::to_string(spec.epsilon) + " needs " +
                    std::to_string(a) + " anomalies but only " +
                    std::to_string(anomaly_rows.size()) + " are available");
  }
  std::vector<std::size_t> injected;
  std::sample(anomaly_rows.begin(), anomaly_rows.end(), std::back_inserter(injected), a, engine);
  auto injected_data = test.subset(injected);
  TabularDataset train = concat(clean, injected_data);

  if (spec.protocol == ContaminationProtocol::kOverlap) {
    return {std::move(train), test, std::move(injected), realized};
  }
  std::vector<std::size_t> keep;
  keep.reserve(test.size() - a);
  for (std::size_t i = 0; i < test.size(); ++i) {
    if (!std::binary_search(injected.begin(), injected.end(), i)) keep.push_back(i);
  }
  return {std::move(train), test.subset(keep), std::move(injected), realized};
}

SyntheticAnomalies synthetic_anomalies(const TabularDataset& sources,
                                       std::span<const double> sigma_per_feature,
                                       std::size_t count, const SeedStream& seed) {
  if (sources.size() == 0) throw DataError("synthetic anomalies need source rows");
  if (sigma_per_feature.size() != sources.dim()) {
    throw DataError("noise scale count does not match feature count");
  }
  for (double s : sigma_per_feature) {
    if (!(s > 0.0)) throw ConfigError("noise sigma must be positive");
  }
  if (count == 0) throw DataError("synthetic anomaly count must be positive");
  Engine engine = seed.engine();
  std::uniform_int_distribution<std::size_t> pick(0, sources.size() - 1);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix values(count, sources.dim());
  std::vector<std::size_t> source_rows;
  source_rows.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t src = pick(engine);
    source_rows.push_back(src);
    for (std::size_t j = 0; j < sources.dim(); ++j) {
      values(i, j) = sources.features()(src, j) + sigma_per_feature[j] * normal(engine);
    }
  }
  return {TabularDataset(std::move(values), std::vector<Label>(count, Label::kAnomalous),
                         sources.name() + "-synthetic"),
          std::move(source_rows)};
}

SyntheticAnomalies synthetic_anomalies(const TabularDataset& sources, double sigma,
                                       std::size_t count, const SeedStream& seed) {
  const std::vector<double> sigmas(sources.dim(), sigma);
  return synthetic_anomalies(sources, sigmas, count, seed);
}

TrainTestSplit split_normals(const TabularDataset& data, double train_share,
                             const SeedStream& seed) {
  if (!data.labels()) throw DataError("split needs a labelled dataset");
  if (!(train_share > 0.0 && train_share < 1.0)) throw ConfigError("train share must be in (0,1)");
  auto normal_rows = rows_with_label(data, Label::kNormal);
  const auto anomaly_rows = rows_with_label(data, Label::kAnomalous);
  Engine engine = seed.child("split").engine();
  std::shuffle(normal_rows.begin(), normal_rows.end(), engine);
  const auto n_train = static_cast<std::size_t>(
      std::floor(train_share * static_cast<double>(normal_rows.size()) + 0.5));
  if (n_train < 2 || n_train >= normal_rows.size()) {
    throw DataError("not enough normal rows to split '" + data.name() + "'");
  }
  std::vector<std::size_t> train_rows(normal_rows.begin(),
                                      normal_rows.begin() + static_cast<std::ptrdiff_t>(n_train));
  std::vector<std::size_t> test_rows(normal_rows.begin() + static_cast<std::ptrdiff_t>(n_train),
                                     normal_rows.end());
  std::sort(test_rows.begin(), test_rows.end());
  test_rows.insert(test_rows.end(), anomaly_rows.begin(), anomaly_rows.end());
  auto test = data.subset(test_rows);
  return {data.subset(train_rows), std::move(test), std::move(test_rows)};
}

std::vector<std::size_t> recompose_test(const TabularDataset& test, double anomaly_fraction,
                                        std::size_t size, const SeedStream& seed) {
  if (!(anomaly_fraction >= 0.0 && anomaly_fraction <= 1.0)) {
    throw ConfigError("test anomaly fraction must lie in [0, 1]");
  }
  const auto normal_rows = rows_with_label(test, Label::kNormal);
  const auto anomaly_rows = rows_with_label(test, Label::kAnomalous);
  const auto n_anom = static_cast<std::size_t>(
      std::floor(anomaly_fraction * static_cast<double>(size) + 0.5 + 1e-9));
  const std::size_t n_norm = size - n_anom;
  if (n_anom > anomaly_rows.size() || n_norm > normal_rows.size()) {
    throw DataError("test set cannot supply " + std::to_string(n_anom) + " anomalies and " +
                    std::to_string(n_norm) + " normals");
  }
  Engine engine = seed.child("recompose").engine();
  std::vector<std::size_t> rows;
  std::sample(normal_rows.begin(), normal_rows.end(), std::back_inserter(rows), n_norm, engine);
  std::sample(anomaly_rows.begin(), anomaly_rows.end(), std::back_inserter(rows), n_anom, engine);
  return rows;
}

}  // namespace ephad
