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
#include <numeric>

#include "ephad/detectors.hpp"

namespace ephad {
namespace {

void require_2d(std::size_t cols) {
  if (cols != 2) {
    throw DataError("RBF one-class model expects 2-D input, got " + std::to_string(cols) +
                    " features");
  }
}

// Gaussian unit activation exp(-|x - mu|^2 / (2 sigma^2)) with sigma = exp(log_scale).
double activation(const Point2& mu, double log_scale, std::span<const double> x, double* r2_out) {
  const double dx = x[0] - mu[0];
  const double dy = x[1] - mu[1];
  const double r2 = dx * dx + dy * dy;
  if (r2_out) *r2_out = r2;
  return std::exp(-0.5 * r2 * std::exp(-2.0 * log_scale));
}

double output(const RbfCenters& centers, const RbfSvddParams& p, std::span<const double> x) {
  double y = p.bias;
  for (std::size_t j = 0; j < kRbfUnits; ++j) {
    y += p.weight[j] * activation(centers[j], p.log_scale[j], x, nullptr);
  }
  return y;
}

}  // namespace

std::array<double, RbfSvddParams::kCount> RbfSvddParams::flatten() const {
  std::array<double, kCount> flat{};
  for (std::size_t j = 0; j < kRbfUnits; ++j) {
    flat[j] = log_scale[j];
    flat[kRbfUnits + j] = weight[j];
  }
  flat[2 * kRbfUnits] = bias;
  flat[2 * kRbfUnits + 1] = center;
  return flat;
}

RbfSvddParams RbfSvddParams::unflatten(const std::array<double, kCount>& flat) {
  RbfSvddParams p;
  for (std::size_t j = 0; j < kRbfUnits; ++j) {
    p.log_scale[j] = flat[j];
    p.weight[j] = flat[kRbfUnits + j];
  }
  p.bias = flat[2 * kRbfUnits];
  p.center = flat[2 * kRbfUnits + 1];
  return p;
}

RbfCenters default_rbf_centers() { return {{{1.0, 1.0}, {-0.25, 2.5}, {-1.0, 0.5}}}; }

RbfSvddModel rbf_svdd_init(const RbfCenters& centers, const SeedStream& seed) {
  Engine engine = seed.child("rbf-init").engine();
  std::normal_distribution<double> normal(0.0, 1.0);
  RbfSvddModel model;
  model.centers = centers;
  for (std::size_t j = 0; j < kRbfUnits; ++j) {
    model.params.log_scale[j] = std::log(0.5) + 0.1 * normal(engine);
    model.params.weight[j] = normal(engine);
  }
  model.params.bias = 0.0;
  model.params.center = normal(engine);
  return model;
}

double rbf_network_output(const RbfSvddModel& model, std::span<const double> x) {
  return output(model.centers, model.params, x);
}

LossAndGradient rbf_svdd_loss_gradient(const RbfCenters& centers, const RbfSvddParams& params,
                                       const Matrix& batch) {
  require_2d(batch.cols());
  LossAndGradient out;
  if (batch.rows() == 0) return out;
  const double inv_n = 1.0 / static_cast<double>(batch.rows());
  auto& g = out.gradient;
  for (std::size_t i = 0; i < batch.rows(); ++i) {
    const auto x = batch.row(i);
    std::array<double, kRbfUnits> phi{};
    std::array<double, kRbfUnits> r2{};
    double y = params.bias;
    for (std::size_t j = 0; j < kRbfUnits; ++j) {
      phi[j] = activation(centers[j], params.log_scale[j], x, &r2[j]);
      y += params.weight[j] * phi[j];
    }
    const double residual = y - params.center;
    out.loss += residual * residual * inv_n;
    const double dy = 2.0 * residual * inv_n;
    for (std::size_t j = 0; j < kRbfUnits; ++j) {
      // d phi / d log_scale = phi * r^2 / sigma^2
      const double dphi = phi[j] * r2[j] * std::exp(-2.0 * params.log_scale[j]);
      g[j] += dy * params.weight[j] * dphi;
      g[kRbfUnits + j] += dy * phi[j];
    }
    g[2 * kRbfUnits] += dy;
    g[2 * kRbfUnits + 1] -= dy;
  }
  return out;
}

RbfSvddFit rbf_svdd_fit(const Matrix& data, const RbfCenters& centers,
                        const RbfSvddOptions& options, const SeedStream& seed) {
  require_2d(data.cols());
  if (data.rows() == 0) throw DataError("RBF one-class model needs training data");
  if (options.batch_size == 0) throw ConfigError("batch size must be positive");

  RbfSvddFit fit{rbf_svdd_init(centers, seed), {}};
  auto theta = fit.model.params.flatten();
  std::array<double, RbfSvddParams::kCount> m{};
  std::array<double, RbfSvddParams::kCount> v{};
  std::size_t step = 0;

  Engine engine = seed.child("rbf-shuffle").engine();
  std::vector<std::size_t> order(data.rows());
  std::iota(order.begin(), order.end(), std::size_t{0});
  fit.epoch_loss.reserve(options.epochs);

  for (std::size_t epoch = 0; epoch < options.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), engine);
    for (std::size_t start = 0; start < order.size(); start += options.batch_size) {
      const std::size_t stop = std::min(order.size(), start + options.batch_size);
      const Matrix batch = data.select_rows(
          std::span<const std::size_t>(order.data() + start, stop - start));
      const auto lg = rbf_svdd_loss_gradient(centers, RbfSvddParams::unflatten(theta), batch);
      ++step;
      const double bc1 = 1.0 - std::pow(options.adam_beta1, static_cast<double>(step));
      const double bc2 = 1.0 - std::pow(options.adam_beta2, static_cast<double>(step));
      for (std::size_t i = 0; i < theta.size(); ++i) {
        m[i] = options.adam_beta1 * m[i] + (1.0 - options.adam_beta1) * lg.gradient[i];
        v[i] = options.adam_beta2 * v[i] +
               (1.0 - options.adam_beta2) * lg.gradient[i] * lg.gradient[i];
        theta[i] -= options.learning_rate * (m[i] / bc1) / (std::sqrt(v[i] / bc2) + options.adam_eps);
      }
    }
    const double loss =
        rbf_svdd_loss_gradient(centers, RbfSvddParams::unflatten(theta), data).loss;
    if (!std::isfinite(loss)) throw DataError("RBF one-class training diverged");
    fit.epoch_loss.push_back(loss);
  }
  fit.model.params = RbfSvddParams::unflatten(theta);
  return fit;
}

RbfSvddFit rbf_svdd_fit(const TabularDataset& data, const RbfCenters& centers,
                        const RbfSvddOptions& options, const SeedStream& seed) {
  return rbf_svdd_fit(data.features(), centers, options, seed);
}

ScoreVector rbf_svdd_score(const RbfSvddModel& model, const Matrix& queries) {
  require_2d(queries.cols());
  std::vector<double> out(queries.rows());
  for (std::size_t i = 0; i < queries.rows(); ++i) {
    const double r = output(model.centers, model.params, queries.row(i)) - model.params.center;
    out[i] = r * r;
  }
  return {std::move(out), Orientation::kAnomalyHigh, "rbf_svdd"};
}

}  // namespace ephad
