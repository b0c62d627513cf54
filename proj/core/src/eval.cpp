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

#include "ephad/eval.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <tuple>

namespace ephad {
namespace {

// Number of tied pairs among runs of equal values in a sorted range.
template <typename Iter, typename Eq>
std::uint64_t tied_pairs(Iter first, Iter last, Eq equal) {
  std::uint64_t total = 0;
  while (first != last) {
    auto run_end = std::next(first);
    while (run_end != last && equal(*first, *run_end)) ++run_end;
    const auto len = static_cast<std::uint64_t>(std::distance(first, run_end));
    total += len * (len - 1) / 2;
    first = run_end;
  }
  return total;
}

// Merge sort that counts exchanges (discordances) of the second key.
std::uint64_t merge_count(std::vector<double>& v, std::vector<double>& buffer, std::size_t lo,
                          std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::uint64_t swaps = merge_count(v, buffer, lo, mid) + merge_count(v, buffer, mid, hi);
  std::size_t i = lo;
  std::size_t j = mid;
  std::size_t k = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      swaps += mid - i;
      buffer[k++] = v[j++];
    } else {
      buffer[k++] = v[i++];
    }
  }
  while (i < mid) buffer[k++] = v[i++];
  while (j < hi) buffer[k++] = v[j++];
  std::copy(buffer.begin() + static_cast<std::ptrdiff_t>(lo),
            buffer.begin() + static_cast<std::ptrdiff_t>(hi),
            v.begin() + static_cast<std::ptrdiff_t>(lo));
  return swaps;
}

}  // namespace

double auroc(const ScoreVector& scores, std::span<const Label> labels) {
  if (scores.size() != labels.size()) {
    throw DataError("AUROC: " + std::to_string(scores.size()) + " scores but " +
                    std::to_string(labels.size()) + " labels");
  }
  const auto s = reorient(scores, Orientation::kAnomalyHigh);
  const std::size_t n = s.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return s[a] < s[b]; });

  double anomalous_rank_sum = 0.0;
  std::size_t n_anomalous = 0;
  for (std::size_t start = 0; start < n;) {
    std::size_t stop = start + 1;
    while (stop < n && s[order[stop]] == s[order[start]]) ++stop;
    // Ranks start..stop-1 (1-based: start+1..stop) share their midrank.
    const double midrank = 0.5 * static_cast<double>(start + 1 + stop);
    for (std::size_t i = start; i < stop; ++i) {
      if (labels[order[i]] == Label::kAnomalous) {
        anomalous_rank_sum += midrank;
        ++n_anomalous;
      }
    }
    start = stop;
  }
  const std::size_t n_normal = n - n_anomalous;
  if (n_anomalous == 0 || n_normal == 0) {
    throw DataError("AUROC needs at least one normal and one anomalous label");
  }
  const double na = static_cast<double>(n_anomalous);
  const double u = anomalous_rank_sum - na * (na + 1.0) / 2.0;
  return u / (na * static_cast<double>(n_normal));
}

double kendall_tau(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw DataError("Kendall tau: lengths differ (" + std::to_string(a.size()) + " vs " +
                    std::to_string(b.size()) + ")");
  }
  const std::size_t n = a.size();
  if (n < 2) throw DataError("Kendall tau needs at least two observations");

  // Knight's O(n log n) algorithm: C - D = n0 - n1 - n2 + n3 - 2 * swaps.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a[i] < a[j] || (a[i] == a[j] && b[i] < b[j]);
  });
  const auto n0 = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  const auto n1 = tied_pairs(order.begin(), order.end(),
                             [&](std::size_t i, std::size_t j) { return a[i] == a[j]; });
  const auto n3 = tied_pairs(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a[i] == a[j] && b[i] == b[j];
  });
  std::vector<double> second(n);
  for (std::size_t i = 0; i < n; ++i) second[i] = b[order[i]];
  std::vector<double> buffer(n);
  const auto swaps = merge_count(second, buffer, 0, n);
  const auto n2 = tied_pairs(second.begin(), second.end(), std::equal_to<>());

  const auto numerator = static_cast<double>(n0) - static_cast<double>(n1) -
                         static_cast<double>(n2) + static_cast<double>(n3) -
                         2.0 * static_cast<double>(swaps);
  return numerator / static_cast<double>(n0);
}

double kendall_tau(const ScoreVector& a, const ScoreVector& b) {
  return kendall_tau(std::span<const double>(a.values()), std::span<const double>(b.values()));
}

std::string to_string(Method method) {
  switch (method) {
    case Method::kBlind: return "blind";
    case Method::kEvidenceOnly: return "evidence_only";
    case Method::kEphad: return "ephad";
    case Method::kEphadAda: return "ephad_ada";
    case Method::kRefine: return "refine";
  }
  return "blind";
}

Method parse_method(const std::string& text) {
  for (Method m : {Method::kBlind, Method::kEvidenceOnly, Method::kEphad, Method::kEphadAda,
                   Method::kRefine}) {
    if (to_string(m) == text) return m;
  }
  throw ConfigError("unknown method '" + text + "'");
}

std::vector<AggregateRow> aggregate(std::span<const ExperimentCell> cells) {
  using Key = std::tuple<std::string, std::string, std::string, int, double, double, double>;
  std::map<Key, std::vector<double>> groups;
  for (const auto& c : cells) {
    groups[{c.dataset, c.detector, c.evidence, static_cast<int>(c.method), c.beta_nominal,
            c.epsilon, c.test_fraction}]
        .push_back(c.auroc);
  }
  std::vector<AggregateRow> rows;
  rows.reserve(groups.size());
  for (const auto& [key, values] : groups) {
    AggregateRow row;
    std::tie(row.dataset, row.detector, row.evidence, std::ignore, row.beta_nominal, row.epsilon,
             row.test_fraction) = key;
    row.method = static_cast<Method>(std::get<3>(key));
    row.n_seeds = values.size();
    const double k = static_cast<double>(values.size());
    row.mean_auroc = std::accumulate(values.begin(), values.end(), 0.0) / k;
    if (values.size() > 1) {
      double ss = 0.0;
      for (double v : values) ss += (v - row.mean_auroc) * (v - row.mean_auroc);
      row.standard_error = std::sqrt(ss / (k - 1.0)) / std::sqrt(k);
      row.se_defined = true;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace ephad
