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
#include <set>

#include "doctest.h"
#include "ephad/contamination.hpp"
#include "helpers.hpp"

using namespace ephad;

namespace {

TabularDataset labelled(std::size_t normals, std::size_t anomalies, std::size_t dim = 2) {
  Matrix m(normals + anomalies, dim);
  std::vector<Label> y;
  for (std::size_t i = 0; i < normals + anomalies; ++i) {
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = static_cast<double>(i * dim + j);
    y.push_back(i < normals ? Label::kNormal : Label::kAnomalous);
  }
  return {std::move(m), std::move(y), "synthetic"};
}

}  // namespace

TEST_CASE("toy generator") {
  const auto only_normals = sample_toy(50, 0, SeedStream(1));
  CHECK(only_normals.count(Label::kNormal) == 50);
  CHECK(only_normals.count(Label::kAnomalous) == 0);

  const auto mixed = sample_toy(90, 10, SeedStream(2));
  CHECK(mixed.size() == 100);
  CHECK(mixed.dim() == 2);
  CHECK((*mixed.labels())[89] == Label::kNormal);
  CHECK((*mixed.labels())[90] == Label::kAnomalous);
  CHECK(sample_toy(90, 10, SeedStream(2)).features() == mixed.features());

  const auto big = sample_toy(100000, 0, SeedStream(3));
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < big.size(); ++i) {
    mx += big.features()(i, 0);
    my += big.features()(i, 1);
  }
  CHECK(std::abs(mx / 1e5 - 1.0) < 0.01);
  CHECK(std::abs(my / 1e5 - 1.0) < 0.01);
}

TEST_CASE("mixture specs") {
  const auto normal = toy_normal_spec();
  REQUIRE(normal.components.size() == 1);
  CHECK(normal.components[0].mean == std::vector<double>{1.0, 1.0});
  CHECK(normal.components[0].variance == 0.07);
  const auto anomaly = toy_anomaly_spec();
  REQUIRE(anomaly.components.size() == 2);
  CHECK(anomaly.weights == std::vector<double>{0.5, 0.5});
  CHECK(anomaly.components[0].variance == 0.03);
  const std::vector<double> at_mean{1.0, 1.0};
  CHECK(normal.density(at_mean) == doctest::Approx(1.0 / (2.0 * M_PI * 0.07)));

  GaussianMixtureSpec bad{{{{0.0}, 1.0}}, {0.7}};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  GaussianMixtureSpec neg{{{{0.0}, -1.0}}, {1.0}};
  CHECK_THROWS_AS(neg.validate(), ConfigError);
}

TEST_CASE("required anomaly count") {
  CHECK(required_anomaly_count(90, 0.1) == 10);
  CHECK(required_anomaly_count(90, 0.0) == 0);
  CHECK(required_anomaly_count(59, 0.1) == 7);
  CHECK_THROWS_AS(required_anomaly_count(10, 1.0), ConfigError);
  CHECK_THROWS_AS(required_anomaly_count(10, -0.1), ConfigError);
}

TEST_CASE("contamination with epsilon zero leaves data untouched") {
  const auto normals = labelled(20, 0);
  const auto test = labelled(5, 5);
  const auto split = contaminate_train(normals, test, {0.0}, SeedStream(1));
  CHECK(split.train().features() == normals.features());
  CHECK(split.test().features() == test.features());
  CHECK(split.realized_epsilon() == 0.0);
}

TEST_CASE("overlap and non-overlap protocols") {
  const auto normals = labelled(90, 0);
  const auto test = labelled(30, 15);
  const ContaminationSpec overlap{0.1, ContaminationProtocol::kOverlap};
  const ContaminationSpec disjoint{0.1, ContaminationProtocol::kNonOverlap};
  const auto a = contaminate_train(normals, test, overlap, SeedStream(4));
  const auto b = contaminate_train(normals, test, disjoint, SeedStream(4));
  CHECK(a.train().size() == 100);
  CHECK(a.realized_epsilon() == doctest::Approx(0.1));
  CHECK(a.train().features() == b.train().features());
  CHECK(a.test().size() == 45);
  CHECK(b.test().size() == 35);
  CHECK(a.injected_test_rows() == b.injected_test_rows());

  // The adjusted test set holds none of the injected rows.
  std::set<std::vector<double>> kept;
  for (std::size_t i = 0; i < b.test().size(); ++i) {
    const auto r = b.test().features().row(i);
    kept.insert({r.begin(), r.end()});
  }
  for (std::size_t row : b.injected_test_rows()) {
    const auto r = test.features().row(row);
    CHECK(kept.count({r.begin(), r.end()}) == 0);
  }
  CHECK_FALSE(a.train().labels());
  const auto& audit = a.audit_train_labels();
  CHECK(std::count(audit.begin(), audit.end(), Label::kAnomalous) == 10);
}

TEST_CASE("empirical mixture tracks epsilon") {
  for (std::size_t m : {10u, 37u, 90u, 203u}) {
    for (double eps : {0.01, 0.05, 0.1, 0.2, 0.3}) {
      const auto split = contaminate_train(labelled(m, 0), labelled(5, 200),
                                           {eps, ContaminationProtocol::kOverlap},
                                           SeedStream(m));
      const auto& y = split.audit_train_labels();
      const double frac = static_cast<double>(std::count(y.begin(), y.end(), Label::kAnomalous)) /
                          static_cast<double>(y.size());
      CHECK(std::abs(frac - eps) <= 1.0 / static_cast<double>(y.size()));
    }
  }
}

TEST_CASE("contamination errors") {
  const auto normals = labelled(90, 0);
  CHECK_THROWS_AS(contaminate_train(normals, labelled(30, 3), {0.1, ContaminationProtocol::kOverlap},
                                    SeedStream(0)),
                  DataError);
  CHECK_THROWS_AS(contaminate_train(normals, labelled(30, 0), {0.1}, SeedStream(0)), DataError);
  CHECK_THROWS_AS(contaminate_train(normals, labelled(30, 3, 3), {0.1}, SeedStream(0)), DataError);
  CHECK_THROWS_AS(contaminate_train(normals, labelled(30, 3), {1.5}, SeedStream(0)), ConfigError);
  CHECK(parse_protocol("non_overlap") == ContaminationProtocol::kNonOverlap);
  CHECK(to_string(ContaminationProtocol::kSyntheticNoise) == "synthetic_noise");
  CHECK_THROWS_AS(parse_protocol("mixed"), ConfigError);
}

TEST_CASE("synthetic noise protocol scales noise to the training normals") {
  const auto normals = labelled(90, 0);
  const auto test = labelled(10, 4);
  const auto split = contaminate_train(normals, test, {0.1}, SeedStream(5));
  CHECK(split.train().size() == 100);
  CHECK(split.test().size() == test.size());
  CHECK(split.injected_test_rows().size() == 10);
  for (std::size_t r : split.injected_test_rows()) {
    CHECK((*test.labels())[r] == Label::kAnomalous);
  }
}

TEST_CASE("synthetic anomalies") {
  const auto sources = labelled(0, 3);
  const auto tiny = synthetic_anomalies(sources, 1e-12, 20, SeedStream(1));
  for (std::size_t i = 0; i < 20; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK(std::abs(tiny.data.features()(i, j) -
                     sources.features()(tiny.source_rows[i], j)) <= 1e-9);
    }
  }
  CHECK(tiny.data.count(Label::kAnomalous) == 20);

  const std::vector<double> sigma{0.5, 3.0};
  const auto big = synthetic_anomalies(sources, sigma, 100000, SeedStream(2));
  for (std::size_t j = 0; j < 2; ++j) {
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < 100000; ++i) {
      const double d = big.data.features()(i, j) - sources.features()(big.source_rows[i], j);
      s1 += d;
      s2 += d * d;
    }
    const double var = (s2 - s1 * s1 / 1e5) / (1e5 - 1.0);
    CHECK(std::abs(var / (sigma[j] * sigma[j]) - 1.0) < 0.02);
  }
  const auto again = synthetic_anomalies(sources, sigma, 50, SeedStream(7));
  CHECK(again.data.features() == synthetic_anomalies(sources, sigma, 50, SeedStream(7)).data.features());
  CHECK_THROWS_AS(synthetic_anomalies(sources, 0.0, 5, SeedStream(0)), ConfigError);
  CHECK_THROWS_AS(synthetic_anomalies(sources, 1.0, 0, SeedStream(0)), DataError);
  CHECK_THROWS_AS(synthetic_anomalies(sources, std::vector<double>{1.0}, 5, SeedStream(0)),
                  DataError);
}

TEST_CASE("stratified split sends every anomaly to test") {
  const auto data = labelled(40, 6);
  const auto split = split_normals(data, 0.5, SeedStream(3));
  CHECK(split.train_normals.size() == 20);
  CHECK(split.train_normals.count(Label::kAnomalous) == 0);
  CHECK(split.test.size() == 26);
  CHECK(split.test.count(Label::kAnomalous) == 6);
  std::set<std::size_t> rows(split.test_rows.begin(), split.test_rows.end());
  CHECK(rows.size() == split.test_rows.size());
  for (std::size_t i = 0; i < split.test.size(); ++i) {
    CHECK(split.test.features()(i, 0) == data.features()(split.test_rows[i], 0));
  }
  CHECK_THROWS_AS(split_normals(data, 1.0, SeedStream(0)), ConfigError);
  CHECK_THROWS_AS(split_normals(data.without_labels(), 0.5, SeedStream(0)), DataError);
}

TEST_CASE("recompose_test keeps the size and hits the fraction") {
  const auto test = labelled(60, 20);
  for (double f : {0.05, 0.1, 0.15, 0.2}) {
    const auto rows = recompose_test(test, f, 60, SeedStream(1));
    CHECK(rows.size() == 60);
    const auto sub = test.subset(rows);
    CHECK(sub.count(Label::kAnomalous) ==
          static_cast<std::size_t>(std::floor(f * 60.0 + 0.5 + 1e-9)));
  }
  CHECK_THROWS_AS(recompose_test(test, 0.5, 60, SeedStream(1)), DataError);
  CHECK_THROWS_AS(recompose_test(test, 1.5, 60, SeedStream(1)), ConfigError);
}
