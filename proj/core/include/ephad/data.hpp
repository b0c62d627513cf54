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

#ifndef EPHAD_DATA_HPP_
#define EPHAD_DATA_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ephad {

// Invalid input data or file contents. Maps to CLI exit code 3.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration or arguments. Maps to CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Label { kNormal, kAnomalous };

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), values_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0; }

  double operator()(std::size_t r, std::size_t c) const { return values_[r * cols_ + c]; }
  double& operator()(std::size_t r, std::size_t c) { return values_[r * cols_ + c]; }

  std::span<const double> row(std::size_t r) const {
    return {values_.data() + r * cols_, cols_};
  }
  std::span<double> row(std::size_t r) { return {values_.data() + r * cols_, cols_}; }

  const std::vector<double>& values() const { return values_; }

  // Rows selected by index, in the given order (indices may repeat).
  Matrix select_rows(std::span<const std::size_t> indices) const;
  void append_row(std::span<const double> row);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

double squared_distance(std::span<const double> a, std::span<const double> b);
double euclidean_distance(std::span<const double> a, std::span<const double> b);

// Feature matrix with optional per-row labels. Construction validates that
// the matrix is non-empty, every value is finite and labels (if any) match n.
class TabularDataset {
 public:
  TabularDataset(Matrix features, std::optional<std::vector<Label>> labels,
                 std::string name = {});

  const Matrix& features() const { return features_; }
  const std::optional<std::vector<Label>>& labels() const { return labels_; }
  const std::string& name() const { return name_; }
  std::size_t size() const { return features_.rows(); }
  std::size_t dim() const { return features_.cols(); }

  TabularDataset subset(std::span<const std::size_t> indices) const;
  TabularDataset without_labels() const { return {features_, std::nullopt, name_}; }

  std::size_t count(Label label) const;

 private:
  Matrix features_;
  std::optional<std::vector<Label>> labels_;
  std::string name_;
};

// Concatenates datasets with equal dimensionality. Labels are kept only when
// every part is labelled.
TabularDataset concat(const TabularDataset& a, const TabularDataset& b, std::string name = {});

// Reads a CSV with a header row. Every column except `label_column` must be
// numeric; the label column holds 0 (normal) or 1 (anomalous).
TabularDataset load_csv(const std::string& path,
                        const std::optional<std::string>& label_column = std::nullopt);
TabularDataset parse_csv(const std::string& text,
                         const std::optional<std::string>& label_column = std::nullopt,
                         const std::string& name = "csv");

enum class Orientation { kAnomalyHigh, kInlierHigh };

Orientation parse_orientation(const std::string& text);
std::string to_string(Orientation orientation);

// Per-sample scores tagged with the direction in which "more anomalous" lies.
class ScoreVector {
 public:
  ScoreVector(std::vector<double> values, Orientation orientation, std::string source = {});

  const std::vector<double>& values() const { return values_; }
  Orientation orientation() const { return orientation_; }
  const std::string& source() const { return source_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  friend bool operator==(const ScoreVector&, const ScoreVector&) = default;

 private:
  std::vector<double> values_;
  Orientation orientation_;
  std::string source_;
};

// Negates values when the orientation differs from `target`.
ScoreVector reorient(const ScoreVector& scores, Orientation target);

enum class Normalization { kNone, kZScore, kMinMax };

Normalization parse_normalization(const std::string& text);
std::string to_string(Normalization mode);

// zscore uses the population standard deviation; constant inputs map to 0
// (zscore) or 0.5 (minmax).
ScoreVector standardize(const ScoreVector& scores, Normalization mode);

// Score files: CSV with header `index,score`, rows covering 0..n-1 in order.
ScoreVector load_score_file(const std::string& path, Orientation orientation);
ScoreVector parse_score_file(const std::string& text, Orientation orientation,
                             const std::string& source = "scores");

// Per-feature mean and population std; zero std is replaced by 1.
struct FeatureScaler {
  std::vector<double> mean;
  std::vector<double> scale;

  static FeatureScaler fit(const Matrix& features);
  Matrix transform(const Matrix& features) const;
  TabularDataset transform(const TabularDataset& data) const;
};

}  // namespace ephad

#endif  // EPHAD_DATA_HPP_
