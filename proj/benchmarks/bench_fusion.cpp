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

#include <random>

#include <benchmark/benchmark.h>

#include "ephad/calibration.hpp"
#include "ephad/fusion.hpp"

namespace {

std::vector<double> draws(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = g(rng);
  return v;
}

void BM_FuseScores(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ephad::ScoreVector base(draws(n, 1), ephad::Orientation::kAnomalyHigh);
  const ephad::ScoreVector ev(draws(n, 2), ephad::Orientation::kInlierHigh);
  const ephad::FusionConfig config{0.5, ephad::Normalization::kZScore};
  for (auto _ : state) benchmark::DoNotOptimize(ephad::fuse_scores(base, ev, config));
}
BENCHMARK(BM_FuseScores)->Range(256, 65536);

void BM_BetaAda(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ephad::ScoreVector base(draws(n, 3), ephad::Orientation::kAnomalyHigh);
  const ephad::ScoreVector ev(draws(n, 4), ephad::Orientation::kInlierHigh);
  for (auto _ : state) benchmark::DoNotOptimize(ephad::beta_ada(base, ev));
}
BENCHMARK(BM_BetaAda)->Range(256, 65536);

void BM_TiltDensity(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  auto weights = draws(k, 5);
  for (auto& w : weights) w = w * w;
  const auto base = ephad::DiscreteDensity::from_weights(weights);
  const auto t = draws(k, 6);
  for (auto _ : state) benchmark::DoNotOptimize(ephad::tilt_density(base, t, 0.5));
}
BENCHMARK(BM_TiltDensity)->Range(64, 16384);

}  // namespace

BENCHMARK_MAIN();
