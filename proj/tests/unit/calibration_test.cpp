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

#include <cmath>
#include <random>

#include "doctest.h"
#include "ephad/calibration.hpp"
#include "helpers.hpp"

using namespace ephad;

TEST_CASE("inlier probability counts reference scores at or below") {
  // Reference of 8 with exactly 3 entries <= 0.5.
  const ScoreVector ref({0.1, 0.2, 0.5, 0.9, 1.0, 1.1, 1.2, 1.3}, Orientation::kAnomalyHigh);
  const auto p = inlier_probability(ScoreVector({0.5}, Orientation::kAnomalyHigh), ref);
  CHECK(p.n_reference == 8);
  CHECK(p.p_inlier[0] == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(p.p_outlier(0) == doctest::Approx(0.4).epsilon(1e-15));

  const auto self = inlier_probability(ref);
  CHECK(self.p_inlier[7] == doctest::Approx(1.0 / 10.0).epsilon(1e-15));
  CHECK(self.p_inlier[0] == doctest::Approx(1.0 - 2.0 / 10.0).epsilon(1e-15));
  CHECK_THROWS_AS(inlier_probability(ref, ScoreVector({}, Orientation::kAnomalyHigh)), DataError);
}

TEST_CASE("inlier probability reorients inlier-high scores") {
  const ScoreVector in({3.0, 1.0, 2.0}, Orientation::kInlierHigh);
  const ScoreVector out({-3.0, -1.0, -2.0}, Orientation::kAnomalyHigh);
  CHECK(inlier_probability(in).p_inlier == inlier_probability(out).p_inlier);
  // Highest inlier score is the most normal.
  const auto p = inlier_probability(in);
  CHECK(p.p_inlier[0] > p.p_inlier[2]);
  CHECK(p.p_inlier[2] > p.p_inlier[1]);
}

TEST_CASE("inlier probability matches the counting oracle with ties") {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> small(0, 9);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> s(30), r(17);
    for (auto& v : s) v = small(rng);
    for (auto& v : r) v = small(rng);
    const auto got = inlier_probability(ScoreVector(s, Orientation::kAnomalyHigh),
                                        ScoreVector(r, Orientation::kAnomalyHigh));
    CHECK(got.p_inlier == oracle::inlier_prob(s, r));
  }
}

TEST_CASE("inlier probability bounds, monotonicity and rank invariance") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const auto v = testing::random_vector(40, rng);
    const double n = 40.0;
    const auto p = inlier_probability(ScoreVector(v, Orientation::kAnomalyHigh));
    std::vector<double> warped;
    for (double x : v) warped.push_back(std::exp(x) + 3.0 * x);
    CHECK(inlier_probability(ScoreVector(warped, Orientation::kAnomalyHigh)).p_inlier ==
          p.p_inlier);
    for (std::size_t i = 0; i < v.size(); ++i) {
      CHECK(p.p_inlier[i] >= 1.0 / (2.0 + n) - 1e-15);
      CHECK(p.p_inlier[i] <= (1.0 + n) / (2.0 + n) + 1e-15);
      for (std::size_t j = 0; j < v.size(); ++j) {
        if (v[i] > v[j]) CHECK(p.p_inlier[i] <= p.p_inlier[j]);
      }
    }
  }
}

TEST_CASE("binary entropy sum") {
  InlierProbabilities half{{0.5}, 1};
  CHECK(binary_entropy_sum(half) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  const auto one_ref = inlier_probability(ScoreVector({1.0}, Orientation::kAnomalyHigh),
                                          ScoreVector({1.0}, Orientation::kAnomalyHigh));
  CHECK(one_ref.p_inlier[0] == doctest::Approx(1.0 / 3.0));
  CHECK(binary_entropy_sum(one_ref) == doctest::Approx(0.6365141682948128).epsilon(1e-12));
  InlierProbabilities a{{0.2, 0.9}, 2};
  InlierProbabilities b{{0.8, 0.1}, 2};
  CHECK(binary_entropy_sum(a) == doctest::Approx(binary_entropy_sum(b)).epsilon(1e-15));
  CHECK(binary_entropy_sum(a) <= 2.0 * std::log(2.0));
  CHECK(binary_entropy_sum(a) >= 0.0);
}

TEST_CASE("beta_ada") {
  std::mt19937_64 rng(3);
  const auto v = testing::random_vector(25, rng);
  const ScoreVector s(v, Orientation::kAnomalyHigh);
  const double h = binary_entropy_sum(inlier_probability(s));
  CHECK(beta_ada(s, s) == doctest::Approx(h / (h + 1e-12)).epsilon(1e-15));

  // Evidence entropy about half the base: base has all-distinct scores, the
  // evidence is nearly constant which pushes probabilities toward 1/(2+n).
  for (int trial = 0; trial < 100; ++trial) {
    const auto b = testing::random_vector(60, rng);
    std::vector<double> e = testing::random_vector(60, rng);
    for (auto& x : e) x = std::round(x);
    const double got = beta_ada(ScoreVector(b, Orientation::kAnomalyHigh),
                                ScoreVector(e, Orientation::kAnomalyHigh));
    CHECK(got == doctest::Approx(oracle::beta_ada(b, e, 1e-12)).epsilon(1e-12));
    CHECK(got > 0.0);
    // Positive rescaling of either input does not move beta_ada.
    std::vector<double> b2, e2;
    for (double x : b) b2.push_back(7.5 * x);
    for (double x : e) e2.push_back(0.01 * x);
    CHECK(beta_ada(ScoreVector(b2, Orientation::kAnomalyHigh),
                   ScoreVector(e2, Orientation::kAnomalyHigh)) == got);
  }
  CHECK_THROWS_AS(beta_ada(s, ScoreVector({1.0}, Orientation::kAnomalyHigh)), DataError);
  CHECK_THROWS_AS(beta_ada(ScoreVector({}, Orientation::kAnomalyHigh),
                           ScoreVector({}, Orientation::kAnomalyHigh)),
                  DataError);
  CHECK_THROWS_AS(beta_ada(s, s, {0.0}), ConfigError);
}

TEST_CASE("beta_ada is the entropy ratio") {
  // Fully tied evidence: every p_inlier = 1/(2+n); base is tie-free.
  const std::size_t n = 50;
  std::vector<double> b(n), e(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) b[i] = static_cast<double>(i);
  const ScoreVector base(b, Orientation::kAnomalyHigh);
  const ScoreVector ev(e, Orientation::kAnomalyHigh);
  const double h_o = binary_entropy_sum(inlier_probability(base));
  const double h_e = binary_entropy_sum(inlier_probability(ev));
  CHECK(h_e < 0.5 * h_o);
  CHECK(beta_ada(base, ev) == doctest::Approx(h_e / h_o).epsilon(1e-12));
}

TEST_CASE("beta_ada is insensitive to tiny delta") {
  std::mt19937_64 rng(4);
  const ScoreVector b(testing::random_vector(30, rng), Orientation::kAnomalyHigh);
  const ScoreVector e(testing::random_vector(30, rng), Orientation::kAnomalyHigh);
  const double lo = beta_ada(b, e, {1e-15});
  const double hi = beta_ada(b, e, {1e-9});
  CHECK(std::abs(lo - hi) / lo < 1e-7);
}

TEST_CASE("fuse_ada delegates to fuse_scores") {
  std::mt19937_64 rng(5);
  const ScoreVector b(testing::random_vector(40, rng), Orientation::kAnomalyHigh);
  std::vector<double> ev = testing::random_vector(40, rng);
  for (auto& x : ev) x = std::round(2.0 * x);
  const ScoreVector e(ev, Orientation::kInlierHigh);
  const auto ada = fuse_ada(b, e, {1.0, Normalization::kZScore});
  CHECK(ada.beta_used > 0.0);
  CHECK(ada.beta_used == beta_ada(b, e));
  CHECK(ada.scores == fuse_scores(b, e, {ada.beta_used, Normalization::kZScore}));
}
