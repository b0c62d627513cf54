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

#include "ephad/detectors.hpp"

namespace {

ephad::Matrix gaussian_rows(std::size_t n, std::size_t d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  ephad::Matrix m(n, d);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < d; ++c) m(r, c) = g(rng);
  return m;
}

void BM_LofFitScore(benchmark::State& state) {
  const auto data = gaussian_rows(static_cast<std::size_t>(state.range(0)), 13, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ephad::lof_score_reference(ephad::lof_fit(data, 20)));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LofFitScore)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void BM_IForestFit(benchmark::State& state) {
  const auto data = gaussian_rows(static_cast<std::size_t>(state.range(0)), 13, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ephad::iforest_fit(data, {100, 256}, ephad::SeedStream(0)));
  }
}
BENCHMARK(BM_IForestFit)->Arg(256)->Arg(2048);

void BM_IForestScore(benchmark::State& state) {
  const auto data = gaussian_rows(2048, 13, 3);
  const auto model = ephad::iforest_fit(data, {100, 256}, ephad::SeedStream(0));
  for (auto _ : state) benchmark::DoNotOptimize(ephad::iforest_score(model, data));
}
BENCHMARK(BM_IForestScore);

void BM_RbfSvddFit(benchmark::State& state) {
  const auto data = gaussian_rows(100, 2, 4);
  const auto centers = ephad::default_rbf_centers();
  for (auto _ : state) {
    benchmark::DoNotOptimize(ephad::rbf_svdd_fit(data, centers, {}, ephad::SeedStream(0)));
  }
}
BENCHMARK(BM_RbfSvddFit);

}  // namespace

BENCHMARK_MAIN();
