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

#ifndef EPHAD_EXPERIMENT_HPP_
#define EPHAD_EXPERIMENT_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ephad/calibration.hpp"
#include "ephad/contamination.hpp"
#include "ephad/data.hpp"
#include "ephad/detectors.hpp"
#include "ephad/eval.hpp"
#include "ephad/fusion.hpp"

namespace ephad {

enum class Scenario { kToy2d, kTabular };

struct DatasetSource {
  std::string name;
  std::string path;
  std::string label_column = "label";
  // Precomputed evidence indexed by row of the full dataset file.
  std::optional<std::string> evidence_file;
};

// Base detector or evidence function. `type` is one of
// rbf_svdd | iforest | lof | knn (base) or lof | iforest | file (evidence).
struct ScorerConfig {
  std::string type;
  std::size_t k = 20;
  std::size_t trees = 100;
  std::size_t subsample = 256;
  RbfSvddOptions rbf;
  Orientation file_orientation = Orientation::kAnomalyHigh;

  static ScorerConfig of(std::string type, std::size_t k = 20) {
    ScorerConfig config;
    config.type = std::move(type);
    config.k = k;
    return config;
  }
};

struct ToyConfig {
  std::size_t n_train = 100;
  std::size_t n_test = 100;
  double test_fraction = 0.1;
  std::size_t grid_resolution = 100;
  double grid_lo = -2.0;
  double grid_hi = 3.0;
};

struct ExperimentConfig {
  Scenario scenario = Scenario::kToy2d;
  std::vector<DatasetSource> datasets;
  ScorerConfig detector = ScorerConfig::of("rbf_svdd");
  ScorerConfig evidence = ScorerConfig::of("lof", 10);
  std::vector<Method> methods{Method::kBlind, Method::kRefine, Method::kEphad};
  std::vector<double> betas{0.5};
  std::vector<double> epsilons{0.1};
  // Empty: natural test composition (tabular) or toy.test_fraction (toy).
  std::vector<double> test_fractions;
  std::vector<std::uint64_t> seeds{0, 1, 2};
  std::uint64_t master_seed = 0;
  Normalization normalization = Normalization::kZScore;
  double delta = 1e-12;
  ContaminationProtocol protocol = ContaminationProtocol::kSyntheticNoise;
  double noise_sigma_factor = 3.0;
  double train_share = 0.5;
  bool standardize_inputs = true;
  std::size_t refine_rounds = 5;
  ToyConfig toy;
  std::string output_dir = "out";
  std::size_t threads = 1;

  // Throws ConfigError on empty grids, beta <= 0, epsilon outside [0, 1),
  // unknown detector/evidence types or missing datasets.
  void validate() const;
};

// Defaults for the 2-D toy reproduction and for tabular benchmark runs.
ExperimentConfig default_toy_config();
ExperimentConfig default_tabular_config();

// JSON config. Missing keys keep the scenario's defaults; unknown keys are
// rejected. Relative dataset paths resolve against `base_dir`.
ExperimentConfig parse_config(const std::string& json_text, const std::string& base_dir = {});
ExperimentConfig load_config(const std::string& path);
std::string config_to_json(const ExperimentConfig& config);

enum class SweepAxis { kBeta, kEpsilon, kTestFraction };
SweepAxis parse_sweep_axis(const std::string& text);
std::string to_string(SweepAxis axis);

struct ScoreGrid {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> blind;
  std::vector<double> fused;
};

struct RunResult {
  std::vector<ExperimentCell> cells;
  std::vector<AggregateRow> aggregates;
  std::optional<ScoreGrid> grid;
};

// Runs every (dataset, epsilon, test fraction, seed) instance, fitting the
// detector and computing evidence once per instance and evaluating every
// (method, beta) pair on the cached scores. Cell order is deterministic and
// independent of the thread count.
RunResult run_experiment(const ExperimentConfig& config);

// Toy reproduction; also produces the decision-surface grid for the first
// instance.
RunResult run_toy2d(const ExperimentConfig& config);

// Requires >= 2 grid points on `axis`.
RunResult run_sweep(const ExperimentConfig& config, SweepAxis axis);

// Report files. All numbers are written with 6 significant digits.
void write_cells_csv(const std::string& path, const std::vector<ExperimentCell>& cells);
void write_aggregates_csv(const std::string& path, const std::vector<AggregateRow>& rows);
void write_grid_csv(const std::string& path, const ScoreGrid& grid);
void write_sweep_csv(const std::string& path, SweepAxis axis,
                     const std::vector<ExperimentCell>& cells);
void write_run_meta(const std::string& path, const ExperimentConfig& config,
                    const RunResult& result);

// Writes cells.csv, aggregates.csv, run_meta.json (and grid.csv when present)
// into `dir`, creating it if needed.
void write_report(const std::string& dir, const ExperimentConfig& config, const RunResult& result);

struct FuseFilesOptions {
  std::string base_path;
  std::string evidence_path;
  std::optional<std::string> labels_path;
  Orientation base_orientation = Orientation::kAnomalyHigh;
  Orientation evidence_orientation = Orientation::kAnomalyHigh;
  Normalization normalization = Normalization::kZScore;
  // Fixed beta, or adaptive when unset.
  std::optional<double> beta = 0.5;
  double delta = 1e-12;
};

struct FuseFilesResult {
  ScoreVector fused;
  double beta_used = 0.0;
  std::optional<double> auroc;
};

FuseFilesResult fuse_files(const FuseFilesOptions& options);
void write_fused_scores(const std::string& path, const FuseFilesResult& result);

// Label file: CSV with header `index,label`, label in {0,1}.
std::vector<Label> load_label_file(const std::string& path);

}  // namespace ephad

#endif  // EPHAD_EXPERIMENT_HPP_
