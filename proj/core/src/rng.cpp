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

#include "ephad/rng.hpp"

namespace ephad {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

SeedStream SeedStream::child(std::string_view label, std::uint64_t index) const {
  SeedStream out = *this;
  out.path_.emplace_back(std::string(label), index);
  return out;
}

std::uint64_t SeedStream::derived_seed() const {
  std::uint64_t h = splitmix64(master_seed_);
  for (const auto& [label, index] : path_) {
    // FNV-1a over the label keeps "a"/1 and "b"/1 apart.
    std::uint64_t label_hash = 0xCBF29CE484222325ULL;
    for (unsigned char c : label) {
      label_hash ^= c;
      label_hash *= 0x100000001B3ULL;
    }
    h = splitmix64(h ^ label_hash);
    h = splitmix64(h ^ index);
  }
  return h;
}

}  // namespace ephad
