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

#ifndef EPHAD_RNG_HPP_
#define EPHAD_RNG_HPP_

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ephad {

using Engine = std::mt19937_64;

// Hierarchically derived random stream. A stream is identified by a master
// seed plus a path of (label, index) steps; the engine seed is a SplitMix64
// hash over the whole path, so equal paths replay identical draws and sibling
// paths are decorrelated.
class SeedStream {
 public:
  explicit SeedStream(std::uint64_t master_seed) : master_seed_(master_seed) {}

  SeedStream child(std::string_view label, std::uint64_t index = 0) const;

  std::uint64_t master_seed() const { return master_seed_; }
  const std::vector<std::pair<std::string, std::uint64_t>>& path() const { return path_; }

  // 64-bit seed derived from (master_seed, path).
  std::uint64_t derived_seed() const;
  Engine engine() const { return Engine(derived_seed()); }

 private:
  std::uint64_t master_seed_;
  std::vector<std::pair<std::string, std::uint64_t>> path_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace ephad

#endif  // EPHAD_RNG_HPP_
