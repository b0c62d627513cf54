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
#include <map>

#include "doctest.h"
#include "ephad/experiment.hpp"
#include "helpers.hpp"

using namespace ephad;

namespace {

ExperimentConfig quick_toy() {
  auto config = default_toy_config();
  config.seeds = {0, 1};
  config.toy.n_train = 60;
  config.toy.n_test = 60;
  config.toy.grid_resolution = 5;
  return config;
}

std::string wine_path() { return std::string(EPHAD_DATA_DIR) + "/wine.csv"; }

}  // namespace

TEST_CASE("config parsing applies scenario defaults and overrides") {
  const auto config = parse_config(R"({
    "scenario": "tabular",
    "datasets": [{"name": "w", "path": "w.csv"}],
    "beta": [0.25, 1.0],
    "epsilon": [0.05],
    "seeds": [3],
    "evidence": {"type": "iforest", "trees": 50},
    "protocol": "non_overlap",
    "normalization": "minmax"
  })",
                                   "/base");
  CHECK(config.scenario == Scenario::kTabular);
  CHECK(config.detector.type == "iforest");
  CHECK(config.evidence.type == "iforest");
  CHECK(config.evidence.trees == 50);
  CHECK(config.betas == std::vector<double>{0.25, 1.0});
  CHECK(config.seeds == std::vector<std::uint64_t>{3});
  CHECK(config.protocol == ContaminationProtocol::kNonOverlap);
  CHECK(config.normalization == Normalization::kMinMax);
  REQUIRE(config.datasets.size() == 1);
  CHECK(config.datasets[0].path == "/base/w.csv");
  CHECK(std::find(config.methods.begin(), config.methods.end(), Method::kEphadAda) !=
        config.methods.end());

  const auto toy = parse_config(R"({"scenario": "toy2d", "toy": {"n_train": 40}})");
  CHECK(toy.toy.n_train == 40);
  CHECK(toy.detector.type == "rbf_svdd");
  CHECK(toy.evidence.k == 10);
}

TEST_CASE("config round-trips through JSON") {
  auto config = default_tabular_config();
  config.datasets = {{"w", "/data/w.csv"}};
  config.betas = {0.1, 2.0};
  config.master_seed = 99;
  const auto again = parse_config(config_to_json(config));
  CHECK(config_to_json(again) == config_to_json(config));
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(parse_config("{not json"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"scenario": "toy2d", "betta": [1]})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"scenario": "toy2d", "beta": [0]})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"scenario": "toy2d", "beta": "x"})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"scenario": "toy2d", "epsilon": [1.0]})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"scenario": "tabular"})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"scenario": "toy2d", "detector": {"type": "svm"}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"scenario": "toy2d", "methods": []})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"scenario": "space"})"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/c.json"), ConfigError);
  CHECK(parse_sweep_axis("test-fraction") == SweepAxis::kTestFraction);
  CHECK(to_string(SweepAxis::kBeta) == "beta");
  CHECK_THROWS_AS(parse_sweep_axis("seed"), ConfigError);
}

TEST_CASE("toy run emits one cell per method and seed plus a grid") {
  const auto config = quick_toy();
  const auto run = run_toy2d(config);
  CHECK(run.cells.size() == 3 * 2);
  CHECK(run.aggregates.size() == 3);
  REQUIRE(run.grid);
  CHECK(run.grid->x.size() == 25);
  CHECK(run.grid->x.front() == -2.0);
  CHECK(run.grid->x.back() == 3.0);
  for (const auto& c : run.cells) {
    CHECK(c.auroc >= 0.0);
    CHECK(c.auroc <= 1.0);
    CHECK(c.dataset == "toy2d");
    CHECK(c.realized_epsilon == doctest::Approx(0.1));
    CHECK(c.beta_used == (c.method == Method::kEphad ? 0.5 : 0.0));
  }
}

TEST_CASE("runs are independent of the thread count") {
  auto config = quick_toy();
  config.methods = {Method::kBlind, Method::kEphad, Method::kEphadAda};
  config.epsilons = {0.0, 0.1};
  const auto dir = testing::scratch_dir("threads");
  const auto one = run_experiment(config);
  config.threads = 4;
  const auto four = run_experiment(config);
  write_cells_csv((dir / "a.csv").string(), one.cells);
  write_cells_csv((dir / "b.csv").string(), four.cells);
  CHECK(testing::read_text(dir / "a.csv") == testing::read_text(dir / "b.csv"));
}

TEST_CASE("blind ignores evidence and ada reports its beta") {
  auto config = quick_toy();
  config.methods = {Method::kBlind, Method::kEvidenceOnly, Method::kEphadAda};
  auto other = config;
  other.evidence = ScorerConfig::of("iforest");
  const auto a = run_experiment(config);
  const auto b = run_experiment(other);
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    if (a.cells[i].method == Method::kBlind) CHECK(a.cells[i].auroc == b.cells[i].auroc);
    if (a.cells[i].method == Method::kEphadAda) CHECK(a.cells[i].beta_used > 0.0);
  }
}

TEST_CASE("tabular run on the bundled wine data") {
  auto config = default_tabular_config();
  config.datasets = {{"wine", wine_path()}};
  config.seeds = {0};
  config.methods = {Method::kBlind, Method::kEvidenceOnly, Method::kEphad, Method::kEphadAda,
                    Method::kRefine};
  const auto run = run_experiment(config);
  REQUIRE(run.cells.size() == 5);
  for (const auto& c : run.cells) {
    CHECK(c.dataset == "wine");
    CHECK(c.test_fraction == doctest::Approx(10.0 / 69.0));
    CHECK(c.realized_epsilon == doctest::Approx(7.0 / 67.0));
  }
}

TEST_CASE("test-fraction sweep keeps the test size and realises the fraction") {
  auto config = quick_toy();
  config.methods = {Method::kBlind};
  config.test_fractions = {0.05, 0.2};
  const auto run = run_sweep(config, SweepAxis::kTestFraction);
  CHECK(run.cells.size() == 4);
  CHECK_THROWS_AS(run_sweep(quick_toy(), SweepAxis::kBeta), ConfigError);

  auto tab = default_tabular_config();
  tab.datasets = {{"wine", wine_path()}};
  tab.seeds = {0};
  tab.methods = {Method::kBlind};
  tab.test_fractions = {0.05, 0.1};
  const auto swept = run_sweep(tab, SweepAxis::kTestFraction);
  REQUIRE(swept.cells.size() == 2);
  CHECK(swept.cells[0].test_fraction == 0.05);
}

TEST_CASE("beta sweep endpoints follow the limit laws") {
  auto config = quick_toy();
  config.methods = {Method::kBlind, Method::kEvidenceOnly, Method::kEphad};
  config.betas = {1e-6, 1e6};
  const auto run = run_sweep(config, SweepAxis::kBeta);
  std::map<std::pair<std::uint64_t, double>, double> ephad;
  std::map<std::uint64_t, double> blind, evidence;
  for (const auto& c : run.cells) {
    if (c.method == Method::kEphad) ephad[{c.seed, c.beta_nominal}] = c.auroc;
    if (c.method == Method::kBlind) blind[c.seed] = c.auroc;
    if (c.method == Method::kEvidenceOnly) evidence[c.seed] = c.auroc;
  }
  for (auto [seed, b] : blind) {
    CHECK(std::abs(ephad[{seed, 1e6}] - b) <= 0.005);
    CHECK(std::abs(ephad[{seed, 1e-6}] - evidence[seed]) <= 0.005);
  }
}

TEST_CASE("report files") {
  const auto config = quick_toy();
  const auto run = run_toy2d(config);
  const auto dir = testing::scratch_dir("report");
  write_report(dir.string(), config, run);
  const auto cells = testing::read_text(dir / "cells.csv");
  CHECK(cells.rfind("dataset,detector,evidence,method,beta,beta_used,epsilon,realized_epsilon,"
                    "test_fraction,seed,auroc\n",
                    0) == 0);
  CHECK(std::count(cells.begin(), cells.end(), '\n') == 7);
  CHECK(testing::read_text(dir / "aggregates.csv").find("se_defined") != std::string::npos);
  CHECK(testing::read_text(dir / "grid.csv").rfind("x,y,blind_score,fused_score\n", 0) == 0);
  const auto meta = testing::read_text(dir / "run_meta.json");
  CHECK(meta.find("\"cell_count\": 6") != std::string::npos);
  write_sweep_csv((dir / "sweep.csv").string(), SweepAxis::kEpsilon, run.cells);
  CHECK(testing::read_text(dir / "sweep.csv").rfind("axis,axis_value,dataset,method,seed,auroc\n",
                                                    0) == 0);
}

TEST_CASE("fuse_files") {
  const auto dir = testing::scratch_dir("fuse_files");
  testing::write_text(dir / "s.csv", "index,score\n0,1\n1,3\n2,2\n");
  testing::write_text(dir / "y.csv", "index,label\n0,0\n1,1\n2,0\n");
  testing::write_text(dir / "gap.csv", "index,score\n0,1\n2,3\n");
  FuseFilesOptions options;
  options.base_path = (dir / "s.csv").string();
  options.evidence_path = options.base_path;
  options.beta = 1.0;
  options.normalization = Normalization::kNone;
  const auto same = fuse_files(options);
  // Both inputs are aligned to inlier-high before adding.
  CHECK(same.fused.values() == std::vector<double>{-2.0, -6.0, -4.0});
  CHECK(same.beta_used == 1.0);
  CHECK_FALSE(same.auroc);

  options.labels_path = (dir / "y.csv").string();
  options.beta.reset();
  const auto ada = fuse_files(options);
  const auto s = load_score_file(options.base_path, Orientation::kAnomalyHigh);
  CHECK(ada.beta_used == beta_ada(s, s));
  REQUIRE(ada.auroc);
  CHECK(*ada.auroc == 1.0);
  write_fused_scores((dir / "out.csv").string(), ada);
  CHECK(testing::read_text(dir / "out.csv").rfind("index,fused_score,beta_used\n", 0) == 0);

  options.evidence_path = (dir / "gap.csv").string();
  CHECK_THROWS_AS(fuse_files(options), DataError);
}
