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

#include "ephad/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace ephad {
namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, ',')) {
    const auto first = field.find_first_not_of(" \t\r");
    const auto last = field.find_last_not_of(" \t\r");
    fields.push_back(first == std::string::npos ? std::string{}
                                                : field.substr(first, last - first + 1));
  }
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::optional<double> parse_double(const std::string& text) {
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) return std::nullopt;
  return value;
}

std::vector<std::string> read_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    lines.push_back(line);
  }
  return lines;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (values_.size() != rows_ * cols_) {
    throw std::invalid_argument("matrix value count does not match shape");
  }
}

Matrix Matrix::select_rows(std::span<const std::size_t> indices) const {
  Matrix out(indices.size(), cols_);
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] >= rows_) throw std::out_of_range("row index out of range");
    std::copy_n(row(indices[i]).begin(), cols_, out.row(i).begin());
  }
  return out;
}

void Matrix::append_row(std::span<const double> r) {
  if (rows_ == 0 && cols_ == 0) cols_ = r.size();
  if (r.size() != cols_) throw std::invalid_argument("row width mismatch");
  values_.insert(values_.end(), r.begin(), r.end());
  ++rows_;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double diff = a[j] - b[j];
    sum += diff * diff;
  }
  return sum;
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(squared_distance(a, b));
}

TabularDataset::TabularDataset(Matrix features, std::optional<std::vector<Label>> labels,
                               std::string name)
    : features_(std::move(features)), labels_(std::move(labels)), name_(std::move(name)) {
  if (features_.rows() == 0 || features_.cols() == 0) {
    throw DataError("dataset '" + name_ + "' must have at least one row and one feature");
  }
  for (double v : features_.values()) {
    if (!std::isfinite(v)) throw DataError("dataset '" + name_ + "' has a non-finite feature");
  }
  if (labels_ && labels_->size() != features_.rows()) {
    throw DataError("dataset '" + name_ + "' label count does not match row count");
  }
}

TabularDataset TabularDataset::subset(std::span<const std::size_t> indices) const {
  std::optional<std::vector<Label>> labels;
  if (labels_) {
    labels.emplace();
    labels->reserve(indices.size());
    for (std::size_t i : indices) labels->push_back((*labels_)[i]);
  }
  return {features_.select_rows(indices), std::move(labels), name_};
}

std::size_t TabularDataset::count(Label label) const {
  if (!labels_) return 0;
  return static_cast<std::size_t>(std::count(labels_->begin(), labels_->end(), label));
}

TabularDataset concat(const TabularDataset& a, const TabularDataset& b, std::string name) {
  if (a.dim() != b.dim()) throw DataError("cannot concatenate datasets of different width");
  std::vector<double> values = a.features().values();
  values.insert(values.end(), b.features().values().begin(), b.features().values().end());
  std::optional<std::vector<Label>> labels;
  if (a.labels() && b.labels()) {
    labels = *a.labels();
    labels->insert(labels->end(), b.labels()->begin(), b.labels()->end());
  }
  return {Matrix(a.size() + b.size(), a.dim(), std::move(values)), std::move(labels),
          name.empty() ? a.name() : std::move(name)};
}

TabularDataset parse_csv(const std::string& text, const std::optional<std::string>& label_column,
                         const std::string& name) {
  const auto lines = read_lines(text);
  if (lines.empty()) throw DataError(name + ": empty file");
  const auto header = split_csv_line(lines.front());
  if (lines.size() < 2) throw DataError(name + ": table has no data rows");

  std::optional<std::size_t> label_index;
  if (label_column) {
    const auto it = std::find(header.begin(), header.end(), *label_column);
    if (it == header.end()) {
      throw DataError(name + ": label column '" + *label_column + "' not found");
    }
    label_index = static_cast<std::size_t>(it - header.begin());
  }
  const std::size_t width = header.size() - (label_index ? 1 : 0);
  if (width == 0) throw DataError(name + ": no feature columns");

  std::vector<double> values;
  values.reserve((lines.size() - 1) * width);
  std::optional<std::vector<Label>> labels;
  if (label_index) labels.emplace();

  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto fields = split_csv_line(lines[r]);
    if (fields.size() != header.size()) {
      throw DataError(name + ": row " + std::to_string(r) + " has " +
                      std::to_string(fields.size()) + " fields, expected " +
                      std::to_string(header.size()));
    }
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (label_index && c == *label_index) {
        if (fields[c] == "0") {
          labels->push_back(Label::kNormal);
        } else if (fields[c] == "1") {
          labels->push_back(Label::kAnomalous);
        } else {
          throw DataError(name + ": row " + std::to_string(r) + ", column '" + header[c] +
                          "': label must be 0 or 1, got '" + fields[c] + "'");
        }
        continue;
      }
      const auto value = parse_double(fields[c]);
      if (!value) {
        throw DataError(name + ": row " + std::to_string(r) + ", column '" + header[c] +
                        "': not a finite number: '" + fields[c] + "'");
      }
      values.push_back(*value);
    }
  }
  const std::size_t rows = lines.size() - 1;
  return {Matrix(rows, width, std::move(values)), std::move(labels), name};
}

TabularDataset load_csv(const std::string& path, const std::optional<std::string>& label_column) {
  return parse_csv(read_file(path), label_column, path);
}

Orientation parse_orientation(const std::string& text) {
  if (text == "anomaly-high") return Orientation::kAnomalyHigh;
  if (text == "inlier-high") return Orientation::kInlierHigh;
  throw ConfigError("unknown orientation '" + text + "' (expected anomaly-high or inlier-high)");
}

std::string to_string(Orientation orientation) {
  return orientation == Orientation::kAnomalyHigh ? "anomaly-high" : "inlier-high";
}

ScoreVector::ScoreVector(std::vector<double> values, Orientation orientation, std::string source)
    : values_(std::move(values)), orientation_(orientation), source_(std::move(source)) {
  for (double v : values_) {
    if (!std::isfinite(v)) throw DataError("score vector '" + source_ + "' has a non-finite value");
  }
}

ScoreVector reorient(const ScoreVector& scores, Orientation target) {
  if (scores.orientation() == target) return scores;
  std::vector<double> flipped(scores.values());
  for (double& v : flipped) v = -v;
  return {std::move(flipped), target, scores.source()};
}

Normalization parse_normalization(const std::string& text) {
  if (text == "none") return Normalization::kNone;
  if (text == "zscore") return Normalization::kZScore;
  if (text == "minmax") return Normalization::kMinMax;
  throw ConfigError("unknown normalization '" + text + "' (expected none, zscore or minmax)");
}

std::string to_string(Normalization mode) {
  switch (mode) {
    case Normalization::kNone: return "none";
    case Normalization::kZScore: return "zscore";
    case Normalization::kMinMax: return "minmax";
  }
  return "none";
}

ScoreVector standardize(const ScoreVector& scores, Normalization mode) {
  if (mode == Normalization::kNone) return scores;
  const auto& v = scores.values();
  const std::size_t n = v.size();
  if (n < 2) throw DataError("standardization needs at least two scores");
  std::vector<double> out(n);
  if (mode == Normalization::kZScore) {
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(n);
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) out[i] = sd > 0.0 ? (v[i] - mean) / sd : 0.0;
  } else {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    const double range = *hi - *lo;
    for (std::size_t i = 0; i < n; ++i) out[i] = range > 0.0 ? (v[i] - *lo) / range : 0.5;
  }
  return {std::move(out), scores.orientation(), scores.source()};
}

ScoreVector parse_score_file(const std::string& text, Orientation orientation,
                             const std::string& source) {
  const auto lines = read_lines(text);
  if (lines.empty()) throw DataError(source + ": empty score file");
  const auto header = split_csv_line(lines.front());
  if (header.size() != 2 || header[0] != "index" || header[1] != "score") {
    throw DataError(source + ": score file header must be 'index,score'");
  }
  if (lines.size() < 2) throw DataError(source + ": score file has no rows");
  std::vector<double> values;
  values.reserve(lines.size() - 1);
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto fields = split_csv_line(lines[r]);
    const std::size_t expected = r - 1;
    if (fields.size() != 2) {
      throw DataError(source + ": row " + std::to_string(r) + " must have 2 fields");
    }
    const auto index = parse_double(fields[0]);
    if (!index || *index != static_cast<double>(expected)) {
      throw DataError(source + ": index gap or misordering at row " + std::to_string(r) +
                      ": expected index " + std::to_string(expected) + ", got '" + fields[0] +
                      "'");
    }
    const auto score = parse_double(fields[1]);
    if (!score) {
      throw DataError(source + ": row " + std::to_string(r) + ": score is not a finite number");
    }
    values.push_back(*score);
  }
  return {std::move(values), orientation, source};
}

ScoreVector load_score_file(const std::string& path, Orientation orientation) {
  return parse_score_file(read_file(path), orientation, path);
}

FeatureScaler FeatureScaler::fit(const Matrix& features) {
  FeatureScaler scaler;
  const std::size_t n = features.rows();
  const std::size_t d = features.cols();
  scaler.mean.assign(d, 0.0);
  scaler.scale.assign(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) scaler.mean[j] += features(i, j);
  }
  for (double& m : scaler.mean) m /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const double diff = features(i, j) - scaler.mean[j];
      scaler.scale[j] += diff * diff;
    }
  }
  for (double& s : scaler.scale) {
    s = std::sqrt(s / static_cast<double>(n));
    if (!(s > 0.0)) s = 1.0;
  }
  return scaler;
}

Matrix FeatureScaler::transform(const Matrix& features) const {
  if (features.cols() != mean.size()) throw DataError("scaler width mismatch");
  Matrix out = features;
  for (std::size_t i = 0; i < out.rows(); ++i) {
    for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) = (out(i, j) - mean[j]) / scale[j];
  }
  return out;
}

TabularDataset FeatureScaler::transform(const TabularDataset& data) const {
  return {transform(data.features()), data.labels(), data.name()};
}

}  // namespace ephad
