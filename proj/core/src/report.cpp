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
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "ephad/experiment.hpp"
#include "json.hpp"

namespace ephad {
namespace {

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write file: " + path);
  out << std::setprecision(6);
  return out;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

void write_cells_csv(const std::string& path, const std::vector<ExperimentCell>& cells) {
  auto out = open_output(path);
  out << "dataset,detector,evidence,method,beta,beta_used,epsilon,realized_epsilon,"
         "test_fraction,seed,auroc\n";
  for (const auto& c : cells) {
    out << c.dataset << ',' << c.detector << ',' << c.evidence << ',' << to_string(c.method) << ','
        << c.beta_nominal << ',' << c.beta_used << ',' << c.epsilon << ',' << c.realized_epsilon
        << ',' << c.test_fraction << ',' << c.seed << ',' << c.auroc << '\n';
  }
}

void write_aggregates_csv(const std::string& path, const std::vector<AggregateRow>& rows) {
  auto out = open_output(path);
  out << "dataset,detector,evidence,method,beta,epsilon,test_fraction,n_seeds,mean_auroc,se,"
         "se_defined\n";
  for (const auto& r : rows) {
    out << r.dataset << ',' << r.detector << ',' << r.evidence << ',' << to_string(r.method) << ','
        << r.beta_nominal << ',' << r.epsilon << ',' << r.test_fraction << ',' << r.n_seeds << ','
        << r.mean_auroc << ',' << r.standard_error << ',' << (r.se_defined ? 1 : 0) << '\n';
  }
}

void write_grid_csv(const std::string& path, const ScoreGrid& grid) {
  auto out = open_output(path);
  out << "x,y,blind_score,fused_score\n";
  for (std::size_t i = 0; i < grid.x.size(); ++i) {
    out << grid.x[i] << ',' << grid.y[i] << ',' << grid.blind[i] << ',' << grid.fused[i] << '\n';
  }
}

void write_sweep_csv(const std::string& path, SweepAxis axis,
                     const std::vector<ExperimentCell>& cells) {
  auto out = open_output(path);
  out << "axis,axis_value,dataset,method,seed,auroc\n";
  for (const auto& c : cells) {
    const double value = axis == SweepAxis::kBeta      ? c.beta_nominal
                         : axis == SweepAxis::kEpsilon ? c.epsilon
                                                       : c.test_fraction;
    out << to_string(axis) << ',' << value << ',' << c.dataset << ',' << to_string(c.method) << ','
        << c.seed << ',' << c.auroc << '\n';
  }
}

void write_run_meta(const std::string& path, const ExperimentConfig& config,
                    const RunResult& result) {
  nlohmann::json meta;
  meta["tool"] = "ephad";
  meta["version"] = "0.1.0";
  meta["config"] = nlohmann::json::parse(config_to_json(config));
  std::vector<double> realized;
  for (const auto& c : result.cells) {
    if (std::find(realized.begin(), realized.end(), c.realized_epsilon) == realized.end()) {
      realized.push_back(c.realized_epsilon);
    }
  }
  meta["realized_epsilon"] = realized;
  meta["cell_count"] = result.cells.size();
  auto out = open_output(path);
  out << meta.dump(2) << '\n';
}

void write_report(const std::string& dir, const ExperimentConfig& config, const RunResult& result) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw DataError("cannot create output directory '" + dir + "': " + ec.message());
  const std::filesystem::path base(dir);
  write_cells_csv((base / "cells.csv").string(), result.cells);
  write_aggregates_csv((base / "aggregates.csv").string(), result.aggregates);
  write_run_meta((base / "run_meta.json").string(), config, result);
  if (result.grid) write_grid_csv((base / "grid.csv").string(), *result.grid);
}

std::vector<Label> load_label_file(const std::string& path) {
  const auto table = parse_csv(read_text(path), std::string("label"), path);
  if (table.dim() != 1) throw DataError(path + ": label file must have columns index,label");
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table.features()(i, 0) != static_cast<double>(i)) {
      throw DataError(path + ": index gap or misordering at row " + std::to_string(i + 1) +
                      ": expected index " + std::to_string(i));
    }
  }
  return *table.labels();
}

FuseFilesResult fuse_files(const FuseFilesOptions& options) {
  const auto base = load_score_file(options.base_path, options.base_orientation);
  const auto evidence = load_score_file(options.evidence_path, options.evidence_orientation);
  if (base.size() != evidence.size()) {
    throw DataError("score files differ in length (" + std::to_string(base.size()) + " vs " +
                    std::to_string(evidence.size()) + ")");
  }
  FuseFilesResult result{ScoreVector({}, Orientation::kInlierHigh), 0.0, std::nullopt};
  if (options.beta) {
    result.fused = fuse_scores(base, evidence, {*options.beta, options.normalization});
    result.beta_used = *options.beta;
  } else {
    auto ada = fuse_ada(base, evidence, {1.0, options.normalization}, {options.delta});
    result.fused = std::move(ada.scores);
    result.beta_used = ada.beta_used;
  }
  if (options.labels_path) {
    const auto labels = load_label_file(*options.labels_path);
    if (labels.size() != base.size()) {
      throw DataError("label file has " + std::to_string(labels.size()) + " rows, scores have " +
                      std::to_string(base.size()));
    }
    result.auroc = auroc(result.fused, labels);
  }
  return result;
}

void write_fused_scores(const std::string& path, const FuseFilesResult& result) {
  auto out = open_output(path);
  out << "index,fused_score,beta_used\n";
  for (std::size_t i = 0; i < result.fused.size(); ++i) {
    out << i << ',' << result.fused[i] << ',' << result.beta_used << '\n';
  }
}

}  // namespace ephad
