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

#include "ephad/eval.hpp"

namespace {

void BM_Auroc(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g(0.0, 1.0);
  std::bernoulli_distribution anomalous(0.1);
  std::vector<double> s(n);
  std::vector<ephad::Label> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = g(rng);
    y[i] = anomalous(rng) ? ephad::Label::kAnomalous : ephad::Label::kNormal;
  }
  y[0] = ephad::Label::kAnomalous;
  y[1] = ephad::Label::kNormal;
  const ephad::ScoreVector scores(s, ephad::Orientation::kAnomalyHigh);
  for (auto _ : state) benchmark::DoNotOptimize(ephad::auroc(scores, y));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Auroc)->Range(256, 65536)->Complexity();

void BM_KendallTau(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = g(rng);
    b[i] = a[i] + g(rng);
  }
  for (auto _ : state) benchmark::DoNotOptimize(ephad::kendall_tau(a, b));
}
BENCHMARK(BM_KendallTau)->Range(256, 8192);

}  // namespace

BENCHMARK_MAIN();
