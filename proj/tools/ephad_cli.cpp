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

// Command-line front end: toy2d, run, sweep and fuse-files.

#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "ephad/experiment.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::size_t> threads;
};

void add_common(CLI::App* app, CommonOptions& opts) {
  app->add_option("--config", opts.config_path, "JSON experiment config");
  app->add_option("--seed", opts.seed, "Master seed (overrides the config)");
  app->add_option("--out", opts.out, "Output directory (overrides the config)");
  app->add_option("--threads", opts.threads, "Worker threads")->check(CLI::PositiveNumber);
}

ephad::ExperimentConfig resolve_config(const CommonOptions& opts,
                                       ephad::ExperimentConfig fallback) {
  ephad::ExperimentConfig config =
      opts.config_path.empty() ? std::move(fallback) : ephad::load_config(opts.config_path);
  if (opts.seed) config.master_seed = *opts.seed;
  if (opts.out) config.output_dir = *opts.out;
  if (opts.threads) config.threads = *opts.threads;
  config.validate();
  return config;
}

void print_summary(const ephad::RunResult& result) {
  std::cout << std::left << std::setw(12) << "dataset" << std::setw(16) << "method"
            << std::setw(10) << "beta" << std::setw(10) << "epsilon" << std::setw(8) << "seeds"
            << std::setw(12) << "auroc" << "se\n";
  std::cout << std::setprecision(4);
  for (const auto& row : result.aggregates) {
    std::cout << std::left << std::setw(12) << row.dataset << std::setw(16)
              << ephad::to_string(row.method) << std::setw(10) << row.beta_nominal
              << std::setw(10) << row.epsilon << std::setw(8) << row.n_seeds << std::setw(12)
              << row.mean_auroc << (row.se_defined ? std::to_string(row.standard_error) : "-")
              << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Post-hoc anomaly score adjustment with test-time evidence"};
  app.require_subcommand(1);

  CommonOptions toy_opts;
  auto* toy = app.add_subcommand("toy2d", "2-D three-Gaussian reproduction (Blind/Refine/EPHAD)");
  add_common(toy, toy_opts);

  CommonOptions run_opts;
  auto* run = app.add_subcommand("run", "Tabular benchmark run from a config");
  add_common(run, run_opts);
  run->get_option("--config")->required();

  CommonOptions sweep_opts;
  std::string axis_text;
  auto* sweep = app.add_subcommand("sweep", "Sweep beta, epsilon or the test anomaly fraction");
  add_common(sweep, sweep_opts);
  sweep->add_option("--axis", axis_text, "beta | epsilon | test-fraction")
      ->required()
      ->check(CLI::IsMember({"beta", "epsilon", "test-fraction"}));

  ephad::FuseFilesOptions fuse_opts;
  std::string base_orientation = "anomaly-high";
  std::string evidence_orientation = "anomaly-high";
  std::string normalization = "zscore";
  std::optional<double> beta;
  bool ada = false;
  std::string fuse_out;
  auto* fuse = app.add_subcommand("fuse-files", "Fuse a base score file with an evidence file");
  fuse->add_option("--base", fuse_opts.base_path, "Base scores (index,score)")->required();
  fuse->add_option("--evidence", fuse_opts.evidence_path, "Evidence scores (index,score)")
      ->required();
  fuse->add_option("--labels", fuse_opts.labels_path, "Optional labels (index,label)");
  auto* beta_opt = fuse->add_option("--beta", beta, "Fixed temperature");
  auto* ada_opt = fuse->add_flag("--ada", ada, "Choose beta adaptively");
  beta_opt->excludes(ada_opt);
  fuse->add_option("--delta", fuse_opts.delta, "Adaptive-beta stabiliser");
  fuse->add_option("--normalization", normalization, "none | zscore | minmax")
      ->check(CLI::IsMember({"none", "zscore", "minmax"}));
  fuse->add_option("--base-orientation", base_orientation, "anomaly-high | inlier-high")
      ->check(CLI::IsMember({"anomaly-high", "inlier-high"}));
  fuse->add_option("--evidence-orientation", evidence_orientation, "anomaly-high | inlier-high")
      ->check(CLI::IsMember({"anomaly-high", "inlier-high"}));
  fuse->add_option("--out", fuse_out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*toy) {
      const auto config = resolve_config(toy_opts, ephad::default_toy_config());
      const auto result = ephad::run_toy2d(config);
      ephad::write_report(config.output_dir, config, result);
      print_summary(result);
    } else if (*run) {
      const auto config = resolve_config(run_opts, ephad::default_tabular_config());
      const auto result = ephad::run_experiment(config);
      ephad::write_report(config.output_dir, config, result);
      print_summary(result);
    } else if (*sweep) {
      const auto axis = ephad::parse_sweep_axis(axis_text);
      ephad::ExperimentConfig fallback = ephad::default_toy_config();
      switch (axis) {
        case ephad::SweepAxis::kBeta: fallback.betas = {0.1, 0.25, 0.5, 1.0, 2.0, 5.0}; break;
        case ephad::SweepAxis::kEpsilon: fallback.epsilons = {0.0, 0.05, 0.1, 0.15}; break;
        case ephad::SweepAxis::kTestFraction:
          fallback.test_fractions = {0.05, 0.1, 0.15, 0.2};
          break;
      }
      const auto config = resolve_config(sweep_opts, fallback);
      const auto result = ephad::run_sweep(config, axis);
      ephad::write_report(config.output_dir, config, result);
      ephad::write_sweep_csv((std::filesystem::path(config.output_dir) / "sweep.csv").string(),
                             axis, result.cells);
      print_summary(result);
    } else if (*fuse) {
      fuse_opts.base_orientation = ephad::parse_orientation(base_orientation);
      fuse_opts.evidence_orientation = ephad::parse_orientation(evidence_orientation);
      fuse_opts.normalization = ephad::parse_normalization(normalization);
      if (ada) {
        fuse_opts.beta.reset();
      } else {
        fuse_opts.beta = beta.value_or(0.5);
      }
      const auto result = ephad::fuse_files(fuse_opts);
      std::filesystem::create_directories(fuse_out);
      ephad::write_fused_scores((std::filesystem::path(fuse_out) / "fused_scores.csv").string(),
                                result);
      std::cout << "beta_used " << std::setprecision(6) << result.beta_used << '\n';
      if (result.auroc) std::cout << "auroc " << *result.auroc << '\n';
    }
  } catch (const ephad::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ephad::DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return 0;
}
