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

#include "ephad/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace ephad {
namespace {

using json = nlohmann::json;
using ScoreFn = std::function<ScoreVector(const Matrix&)>;

const std::set<std::string> kBaseTypes{"rbf_svdd", "iforest", "lof", "knn"};
const std::set<std::string> kEvidenceTypes{"lof", "iforest", "file"};

// ---------------------------------------------------------------------------
// Config parsing
// ---------------------------------------------------------------------------

void reject_unknown_keys(const json& object, const std::set<std::string>& allowed,
                         const std::string& where) {
  if (!object.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& [key, value] : object.items()) {
    if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
T get_as(const json& object, const std::string& key, const std::string& where) {
  try {
    return object.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("invalid value for '" + key + "' in " + where);
  }
}

template <typename T>
void read_if(const json& object, const std::string& key, T& out, const std::string& where) {
  if (object.contains(key)) out = get_as<T>(object, key, where);
}

std::string resolve(const std::string& path, const std::string& base_dir) {
  if (path.empty() || base_dir.empty()) return path;
  const std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  return (std::filesystem::path(base_dir) / p).lexically_normal().string();
}

void read_scorer(const json& object, ScorerConfig& scorer, const std::string& where) {
  reject_unknown_keys(object,
                      {"type", "k", "trees", "subsample", "epochs", "batch_size", "learning_rate",
                       "orientation"},
                      where);
  read_if(object, "type", scorer.type, where);
  read_if(object, "k", scorer.k, where);
  read_if(object, "trees", scorer.trees, where);
  read_if(object, "subsample", scorer.subsample, where);
  read_if(object, "epochs", scorer.rbf.epochs, where);
  read_if(object, "batch_size", scorer.rbf.batch_size, where);
  read_if(object, "learning_rate", scorer.rbf.learning_rate, where);
  if (object.contains("orientation")) {
    scorer.file_orientation = parse_orientation(get_as<std::string>(object, "orientation", where));
  }
}

json scorer_to_json(const ScorerConfig& s) {
  json j{{"type", s.type}, {"k", s.k}, {"trees", s.trees}, {"subsample", s.subsample}};
  if (s.type == "rbf_svdd") {
    j["epochs"] = s.rbf.epochs;
    j["batch_size"] = s.rbf.batch_size;
    j["learning_rate"] = s.rbf.learning_rate;
  }
  if (s.type == "file") j["orientation"] = to_string(s.file_orientation);
  return j;
}

// ---------------------------------------------------------------------------
// Scorers
// ---------------------------------------------------------------------------

ScoreFn fit_scorer(const ScorerConfig& config, const Matrix& train, const SeedStream& seed) {
  if (config.type == "rbf_svdd") {
    auto model = rbf_svdd_fit(train, default_rbf_centers(), config.rbf, seed).model;
    return [model](const Matrix& q) { return rbf_svdd_score(model, q); };
  }
  if (config.type == "iforest") {
    auto model = iforest_fit(train, {config.trees, config.subsample}, seed);
    return [model = std::move(model)](const Matrix& q) { return iforest_score(model, q); };
  }
  if (config.type == "lof") {
    auto model = lof_fit(train, config.k);
    return [model = std::move(model)](const Matrix& q) { return lof_score(model, q); };
  }
  if (config.type == "knn") {
    auto model = knn_fit(train, config.k);
    return [model = std::move(model)](const Matrix& q) { return knn_distance_score(model, q); };
  }
  throw ConfigError("unknown detector type '" + config.type + "'");
}

// Iterative filtering: fit, drop the top-epsilon share of the training rows
// by anomaly score, refit on the rest; repeated `rounds` times.
ScoreFn fit_refine(const ScorerConfig& config, const Matrix& train, double epsilon,
                   std::size_t rounds, const SeedStream& seed) {
  ScoreFn model = fit_scorer(config, train, seed.child("refine", 0));
  const auto drop = static_cast<std::size_t>(
      std::floor(epsilon * static_cast<double>(train.rows()) + 0.5 + 1e-9));
  if (drop == 0 || drop >= train.rows()) return model;
  for (std::size_t r = 1; r <= rounds; ++r) {
    const auto scores = reorient(model(train), Orientation::kAnomalyHigh);
    std::vector<std::size_t> order(train.rows());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
    order.resize(train.rows() - drop);
    std::sort(order.begin(), order.end());
    model = fit_scorer(config, train.select_rows(order), seed.child("refine", r));
  }
  return model;
}

ScoreVector transductive_evidence(const ScorerConfig& config, const Matrix& test,
                                  const SeedStream& seed) {
  if (config.type == "lof") return lof_score_reference(lof_fit(test, config.k));
  if (config.type == "iforest") {
    return iforest_score(iforest_fit(test, {config.trees, config.subsample}, seed), test);
  }
  throw ConfigError("evidence type '" + config.type + "' cannot be computed transductively");
}

// Evidence for points outside the test batch (decision-surface grid).
ScoreVector inductive_evidence(const ScorerConfig& config, const Matrix& test,
                               const Matrix& queries, const SeedStream& seed) {
  if (config.type == "lof") return lof_score(lof_fit(test, config.k), queries);
  if (config.type == "iforest") {
    return iforest_score(iforest_fit(test, {config.trees, config.subsample}, seed), queries);
  }
  throw ConfigError("evidence type '" + config.type + "' has no grid form");
}

// ---------------------------------------------------------------------------
// Instances
// ---------------------------------------------------------------------------

struct Instance {
  std::size_t dataset = 0;
  std::size_t epsilon = 0;
  std::optional<std::size_t> test_fraction;
  std::size_t seed = 0;
};

struct PreparedData {
  TabularDataset data;
  std::optional<ScoreVector> evidence_file;
};

struct InstanceData {
  Matrix train;
  TabularDataset test;
  std::optional<ScoreVector> file_evidence;  // aligned with test rows
  double realized_epsilon = 0.0;
};

InstanceData build_toy_instance(const ExperimentConfig& config, const Instance& inst,
                                const SeedStream& stream) {
  const double eps = config.epsilons[inst.epsilon];
  const double frac =
      inst.test_fraction ? config.test_fractions[*inst.test_fraction] : config.toy.test_fraction;
  const std::size_t n_train = config.toy.n_train;
  const auto n_anom_train = static_cast<std::size_t>(
      std::floor(eps * static_cast<double>(n_train) + 0.5 + 1e-9));
  const std::size_t n_norm_train = n_train - n_anom_train;

  // Shared pools across the epsilon grid: each epsilon takes a prefix of the
  // normals and draws its anomalies from the same pool.
  const auto normal_pool = sample_toy(n_train, 0, stream.child("train-normals"));
  const auto anomaly_pool = sample_toy(0, n_train, stream.child("train-anomalies"));
  std::vector<std::size_t> prefix(n_norm_train);
  std::iota(prefix.begin(), prefix.end(), std::size_t{0});
  const auto normals = normal_pool.subset(prefix);

  ContaminationSpec spec{eps, ContaminationProtocol::kOverlap, config.noise_sigma_factor};
  const auto split = contaminate_train(normals, anomaly_pool, spec, stream.child("inject"));

  const auto n_anom_test = static_cast<std::size_t>(
      std::floor(frac * static_cast<double>(config.toy.n_test) + 0.5 + 1e-9));
  auto test = sample_toy(config.toy.n_test - n_anom_test, n_anom_test, stream.child("test"));
  return {split.train().features(), std::move(test), std::nullopt, split.realized_epsilon()};
}

InstanceData build_tabular_instance(const ExperimentConfig& config, const Instance& inst,
                                    const PreparedData& prepared, const SeedStream& stream) {
  const auto split = split_normals(prepared.data, config.train_share, stream.child("split"));
  TabularDataset test = split.test;
  std::vector<std::size_t> rows = split.test_rows;
  if (inst.test_fraction) {
    const std::size_t size = test.count(Label::kNormal);
    const auto pick = recompose_test(test, config.test_fractions[*inst.test_fraction], size,
                                     stream.child("test-composition"));
    test = test.subset(pick);
    std::vector<std::size_t> picked_rows;
    for (std::size_t p : pick) picked_rows.push_back(rows[p]);
    rows = std::move(picked_rows);
  }
  ContaminationSpec spec{config.epsilons[inst.epsilon], config.protocol,
                         config.noise_sigma_factor};
  const auto contaminated = contaminate_train(split.train_normals, test, spec,
                                              stream.child("epsilon", inst.epsilon));
  if (contaminated.test().size() != test.size()) {
    // non_overlap removed rows; keep the file-evidence mapping aligned.
    std::vector<std::size_t> kept;
    const auto& injected = contaminated.injected_test_rows();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (std::find(injected.begin(), injected.end(), i) == injected.end()) kept.push_back(rows[i]);
    }
    rows = std::move(kept);
  }

  Matrix train = contaminated.train().features();
  TabularDataset final_test = contaminated.test();
  if (config.standardize_inputs) {
    const auto scaler = FeatureScaler::fit(train);
    train = scaler.transform(train);
    final_test = scaler.transform(final_test);
  }
  std::optional<ScoreVector> evidence;
  if (prepared.evidence_file) {
    std::vector<double> values;
    values.reserve(rows.size());
    for (std::size_t r : rows) values.push_back((*prepared.evidence_file)[r]);
    evidence.emplace(std::move(values), prepared.evidence_file->orientation(),
                     prepared.evidence_file->source());
  }
  return {std::move(train), std::move(final_test), std::move(evidence),
          contaminated.realized_epsilon()};
}

struct InstanceResult {
  std::vector<ExperimentCell> cells;
  std::optional<ScoreGrid> grid;
};

ScoreGrid make_grid(const ExperimentConfig& config, const ScoreFn& blind, const Matrix& test,
                    const SeedStream& stream) {
  const std::size_t r = config.toy.grid_resolution;
  Matrix points(r * r, 2);
  const double step = r > 1 ? (config.toy.grid_hi - config.toy.grid_lo) / static_cast<double>(r - 1)
                            : 0.0;
  for (std::size_t iy = 0; iy < r; ++iy) {
    for (std::size_t ix = 0; ix < r; ++ix) {
      points(iy * r + ix, 0) = config.toy.grid_lo + step * static_cast<double>(ix);
      points(iy * r + ix, 1) = config.toy.grid_lo + step * static_cast<double>(iy);
    }
  }
  const auto base = blind(points);
  const auto evidence = inductive_evidence(config.evidence, test, points, stream.child("evidence"));
  const auto fused = fuse_scores(base, evidence, {config.betas.front(), config.normalization});
  ScoreGrid grid;
  for (std::size_t i = 0; i < points.rows(); ++i) {
    grid.x.push_back(points(i, 0));
    grid.y.push_back(points(i, 1));
  }
  grid.blind = base.values();
  grid.fused = fused.values();
  return grid;
}

InstanceResult evaluate_instance(const ExperimentConfig& config, const Instance& inst,
                                 const std::vector<PreparedData>& prepared, bool want_grid) {
  const std::uint64_t seed_value = config.seeds[inst.seed];
  const SeedStream stream =
      SeedStream(config.master_seed).child("dataset", inst.dataset).child("seed", seed_value);
  const InstanceData data = config.scenario == Scenario::kToy2d
                                ? build_toy_instance(config, inst, stream)
                                : build_tabular_instance(config, inst, prepared[inst.dataset],
                                                         stream);
  const auto& labels = *data.test.labels();
  const SeedStream model_stream = stream.child("epsilon", inst.epsilon).child("model");
  const ScoreFn blind = fit_scorer(config.detector, data.train, model_stream);
  const ScoreVector base = blind(data.test.features());
  const ScoreVector evidence =
      data.file_evidence ? *data.file_evidence
                         : transductive_evidence(config.evidence, data.test.features(),
                                                 stream.child("evidence"));

  const double epsilon = config.epsilons[inst.epsilon];
  const double test_fraction =
      inst.test_fraction
          ? config.test_fractions[*inst.test_fraction]
          : static_cast<double>(data.test.count(Label::kAnomalous)) /
                static_cast<double>(data.test.size());

  std::optional<double> blind_auroc;
  std::optional<double> evidence_auroc;
  std::optional<double> refine_auroc;
  std::optional<std::pair<double, double>> ada;
  const auto cached = [](std::optional<double>& slot, auto compute) {
    if (!slot) slot = compute();
    return *slot;
  };

  InstanceResult result;
  const std::string dataset_name = config.scenario == Scenario::kToy2d
                                        ? std::string("toy2d")
                                        : config.datasets[inst.dataset].name;
  const std::string evidence_name = data.file_evidence ? "file" : config.evidence.type;
  for (double beta : config.betas) {
    for (Method method : config.methods) {
      ExperimentCell cell{dataset_name, config.detector.type, evidence_name, method, beta, 0.0,
                          epsilon, data.realized_epsilon, test_fraction, seed_value, 0.0};
      switch (method) {
        case Method::kBlind:
          cell.auroc = cached(blind_auroc, [&] { return auroc(base, labels); });
          break;
        case Method::kEvidenceOnly:
          cell.auroc = cached(evidence_auroc, [&] { return auroc(evidence, labels); });
          break;
        case Method::kEphad:
          cell.beta_used = beta;
          cell.auroc = auroc(fuse_scores(base, evidence, {beta, config.normalization}), labels);
          break;
        case Method::kEphadAda:
          if (!ada) {
            const auto fused =
                fuse_ada(base, evidence, {1.0, config.normalization}, {config.delta});
            ada.emplace(fused.beta_used, auroc(fused.scores, labels));
          }
          cell.beta_used = ada->first;
          cell.auroc = ada->second;
          break;
        case Method::kRefine:
          cell.auroc = cached(refine_auroc, [&] {
            const auto refined = fit_refine(config.detector, data.train, epsilon,
                                            config.refine_rounds, model_stream);
            return auroc(refined(data.test.features()), labels);
          });
          break;
      }
      result.cells.push_back(std::move(cell));
    }
  }
  if (want_grid) result.grid = make_grid(config, blind, data.test.features(), stream);
  return result;
}

std::vector<PreparedData> prepare_datasets(const ExperimentConfig& config) {
  std::vector<PreparedData> prepared;
  if (config.scenario != Scenario::kTabular) return prepared;
  for (const auto& source : config.datasets) {
    auto data = load_csv(source.path, source.label_column);
    if (!data.labels()) throw DataError("dataset '" + source.name + "' has no labels");
    std::optional<ScoreVector> evidence;
    if (config.evidence.type == "file") {
      if (!source.evidence_file) {
        throw ConfigError("dataset '" + source.name + "' needs an evidence_file");
      }
      evidence = load_score_file(*source.evidence_file, config.evidence.file_orientation);
      if (evidence->size() != data.size()) {
        throw DataError("evidence file '" + *source.evidence_file + "' has " +
                        std::to_string(evidence->size()) + " rows, dataset has " +
                        std::to_string(data.size()));
      }
    }
    prepared.push_back({TabularDataset(data.features(), data.labels(), source.name),
                        std::move(evidence)});
  }
  return prepared;
}

RunResult execute(const ExperimentConfig& config, bool want_grid) {
  config.validate();
  const auto prepared = prepare_datasets(config);
  const std::size_t n_datasets = config.scenario == Scenario::kToy2d ? 1 : config.datasets.size();

  std::vector<Instance> instances;
  for (std::size_t d = 0; d < n_datasets; ++d) {
    for (std::size_t e = 0; e < config.epsilons.size(); ++e) {
      const std::size_t n_frac = std::max<std::size_t>(1, config.test_fractions.size());
      for (std::size_t f = 0; f < n_frac; ++f) {
        for (std::size_t s = 0; s < config.seeds.size(); ++s) {
          instances.push_back({d, e,
                               config.test_fractions.empty() ? std::nullopt
                                                             : std::optional<std::size_t>(f),
                               s});
        }
      }
    }
  }

  std::vector<InstanceResult> results(instances.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    for (std::size_t i = next++; i < instances.size(); i = next++) {
      try {
        results[i] = evaluate_instance(config, instances[i], prepared, want_grid && i == 0);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t n_threads = std::clamp<std::size_t>(config.threads, 1, instances.size());
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  RunResult run;
  for (auto& r : results) {
    run.cells.insert(run.cells.end(), std::make_move_iterator(r.cells.begin()),
                     std::make_move_iterator(r.cells.end()));
    if (r.grid && !run.grid) run.grid = std::move(r.grid);
  }
  run.aggregates = aggregate(run.cells);
  return run;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (methods.empty()) throw ConfigError("method set must not be empty");
  if (betas.empty()) throw ConfigError("beta grid must not be empty");
  if (epsilons.empty()) throw ConfigError("epsilon grid must not be empty");
  if (seeds.empty()) throw ConfigError("at least one seed is required");
  for (double b : betas) {
    if (!(b > 0.0) || !std::isfinite(b)) throw ConfigError("beta values must be positive");
  }
  for (double e : epsilons) {
    if (!(e >= 0.0 && e < 1.0)) throw ConfigError("epsilon values must lie in [0, 1)");
  }
  for (double f : test_fractions) {
    if (!(f > 0.0 && f < 1.0)) throw ConfigError("test anomaly fractions must lie in (0, 1)");
  }
  if (!(delta > 0.0)) throw ConfigError("delta must be positive");
  if (!kBaseTypes.count(detector.type)) {
    throw ConfigError("unknown detector type '" + detector.type + "'");
  }
  if (!kEvidenceTypes.count(evidence.type)) {
    throw ConfigError("unknown evidence type '" + evidence.type + "'");
  }
  if (scenario == Scenario::kToy2d) {
    if (evidence.type == "file") throw ConfigError("toy scenario cannot use file evidence");
    if (toy.n_train < 2 || toy.n_test < 2) throw ConfigError("toy sizes must be >= 2");
    if (!(toy.test_fraction > 0.0 && toy.test_fraction < 1.0)) {
      throw ConfigError("toy test fraction must lie in (0, 1)");
    }
    if (toy.grid_resolution < 2 || !(toy.grid_hi > toy.grid_lo)) {
      throw ConfigError("toy grid needs resolution >= 2 and hi > lo");
    }
  } else {
    if (datasets.empty()) throw ConfigError("tabular scenario needs at least one dataset");
    if (detector.type == "rbf_svdd") throw ConfigError("rbf_svdd only supports the toy scenario");
    if (!(train_share > 0.0 && train_share < 1.0)) throw ConfigError("train_share must be in (0,1)");
  }
}

ExperimentConfig default_toy_config() { return {}; }

ExperimentConfig default_tabular_config() {
  ExperimentConfig config;
  config.scenario = Scenario::kTabular;
  config.detector = ScorerConfig::of("iforest");
  config.evidence = ScorerConfig::of("lof", 20);
  config.methods = {Method::kBlind, Method::kEvidenceOnly, Method::kEphad, Method::kEphadAda};
  config.standardize_inputs = false;
  return config;
}

ExperimentConfig parse_config(const std::string& json_text, const std::string& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  const std::string where = "config";
  reject_unknown_keys(root,
                      {"scenario", "datasets", "detector", "evidence", "methods", "beta",
                       "epsilon", "test_anomaly_fraction", "seeds", "master_seed",
                       "normalization", "delta", "protocol", "noise_sigma_factor", "train_share",
                       "standardize_inputs", "refine_rounds", "toy", "output_dir", "threads"},
                      where);
  std::string scenario = "toy2d";
  read_if(root, "scenario", scenario, where);
  ExperimentConfig config;
  if (scenario == "tabular") {
    config = default_tabular_config();
  } else if (scenario != "toy2d") {
    throw ConfigError("unknown scenario '" + scenario + "' (expected toy2d or tabular)");
  }

  if (root.contains("datasets")) {
    const auto& list = root.at("datasets");
    if (!list.is_array()) throw ConfigError("'datasets' must be an array");
    for (const auto& entry : list) {
      reject_unknown_keys(entry, {"name", "path", "label_column", "evidence_file"}, "datasets");
      DatasetSource source;
      source.path = resolve(get_as<std::string>(entry, "path", "datasets"), base_dir);
      source.name = std::filesystem::path(source.path).stem().string();
      read_if(entry, "name", source.name, "datasets");
      read_if(entry, "label_column", source.label_column, "datasets");
      if (entry.contains("evidence_file")) {
        source.evidence_file =
            resolve(get_as<std::string>(entry, "evidence_file", "datasets"), base_dir);
      }
      config.datasets.push_back(std::move(source));
    }
  }
  if (root.contains("detector")) read_scorer(root.at("detector"), config.detector, "detector");
  if (root.contains("evidence")) read_scorer(root.at("evidence"), config.evidence, "evidence");
  if (root.contains("methods")) {
    config.methods.clear();
    for (const auto& m : get_as<std::vector<std::string>>(root, "methods", where)) {
      config.methods.push_back(parse_method(m));
    }
  }
  read_if(root, "beta", config.betas, where);
  read_if(root, "epsilon", config.epsilons, where);
  read_if(root, "test_anomaly_fraction", config.test_fractions, where);
  read_if(root, "seeds", config.seeds, where);
  read_if(root, "master_seed", config.master_seed, where);
  if (root.contains("normalization")) {
    config.normalization = parse_normalization(get_as<std::string>(root, "normalization", where));
  }
  read_if(root, "delta", config.delta, where);
  if (root.contains("protocol")) {
    config.protocol = parse_protocol(get_as<std::string>(root, "protocol", where));
  }
  read_if(root, "noise_sigma_factor", config.noise_sigma_factor, where);
  read_if(root, "train_share", config.train_share, where);
  read_if(root, "standardize_inputs", config.standardize_inputs, where);
  read_if(root, "refine_rounds", config.refine_rounds, where);
  if (root.contains("toy")) {
    const auto& toy = root.at("toy");
    reject_unknown_keys(toy,
                        {"n_train", "n_test", "test_fraction", "grid_resolution", "grid_lo",
                         "grid_hi"},
                        "toy");
    read_if(toy, "n_train", config.toy.n_train, "toy");
    read_if(toy, "n_test", config.toy.n_test, "toy");
    read_if(toy, "test_fraction", config.toy.test_fraction, "toy");
    read_if(toy, "grid_resolution", config.toy.grid_resolution, "toy");
    read_if(toy, "grid_lo", config.toy.grid_lo, "toy");
    read_if(toy, "grid_hi", config.toy.grid_hi, "toy");
  }
  if (root.contains("output_dir")) {
    config.output_dir = resolve(get_as<std::string>(root, "output_dir", where), base_dir);
  }
  read_if(root, "threads", config.threads, where);
  config.validate();
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), std::filesystem::path(path).parent_path().string());
}

std::string config_to_json(const ExperimentConfig& config) {
  json root;
  root["scenario"] = config.scenario == Scenario::kToy2d ? "toy2d" : "tabular";
  root["datasets"] = json::array();
  for (const auto& d : config.datasets) {
    json entry{{"name", d.name}, {"path", d.path}, {"label_column", d.label_column}};
    if (d.evidence_file) entry["evidence_file"] = *d.evidence_file;
    root["datasets"].push_back(entry);
  }
  root["detector"] = scorer_to_json(config.detector);
  root["evidence"] = scorer_to_json(config.evidence);
  root["methods"] = json::array();
  for (Method m : config.methods) root["methods"].push_back(to_string(m));
  root["beta"] = config.betas;
  root["epsilon"] = config.epsilons;
  root["test_anomaly_fraction"] = config.test_fractions;
  root["seeds"] = config.seeds;
  root["master_seed"] = config.master_seed;
  root["normalization"] = to_string(config.normalization);
  root["delta"] = config.delta;
  root["protocol"] = to_string(config.protocol);
  root["noise_sigma_factor"] = config.noise_sigma_factor;
  root["train_share"] = config.train_share;
  root["standardize_inputs"] = config.standardize_inputs;
  root["refine_rounds"] = config.refine_rounds;
  root["toy"] = {{"n_train", config.toy.n_train},
                 {"n_test", config.toy.n_test},
                 {"test_fraction", config.toy.test_fraction},
                 {"grid_resolution", config.toy.grid_resolution},
                 {"grid_lo", config.toy.grid_lo},
                 {"grid_hi", config.toy.grid_hi}};
  root["output_dir"] = config.output_dir;
  root["threads"] = config.threads;
  return root.dump(2);
}

SweepAxis parse_sweep_axis(const std::string& text) {
  if (text == "beta") return SweepAxis::kBeta;
  if (text == "epsilon") return SweepAxis::kEpsilon;
  if (text == "test-fraction") return SweepAxis::kTestFraction;
  throw ConfigError("unknown sweep axis '" + text + "' (expected beta, epsilon or test-fraction)");
}

std::string to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kBeta: return "beta";
    case SweepAxis::kEpsilon: return "epsilon";
    case SweepAxis::kTestFraction: return "test-fraction";
  }
  return "beta";
}

RunResult run_experiment(const ExperimentConfig& config) { return execute(config, false); }

RunResult run_toy2d(const ExperimentConfig& config) {
  if (config.scenario != Scenario::kToy2d) throw ConfigError("toy2d needs scenario 'toy2d'");
  return execute(config, true);
}

RunResult run_sweep(const ExperimentConfig& config, SweepAxis axis) {
  const std::size_t points = axis == SweepAxis::kBeta      ? config.betas.size()
                             : axis == SweepAxis::kEpsilon ? config.epsilons.size()
                                                           : config.test_fractions.size();
  if (points < 2) {
    throw ConfigError("sweep over " + to_string(axis) + " needs at least two grid values");
  }
  return execute(config, false);
}

}  // namespace ephad
