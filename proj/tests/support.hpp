// Copyright 2026 The cartesian-topk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Shared test helpers: naive oracles that do not reuse library selection code.

#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "cartesian_topk/cartesian_topk.hpp"

namespace ct = cartesian_topk;

namespace testing_support {

inline std::vector<ct::ScoreKey> keys(std::initializer_list<double> v) { return ct::to_keys(v); }

/// Every sum of the tensor, fully sorted.
inline std::vector<ct::ScoreKey> all_sums_sorted(const ct::Arrays& arrays) {
  std::vector<ct::ScoreKey> sums{ct::ScoreKey(0.0)};
  for (const auto& a : arrays) {
    std::vector<ct::ScoreKey> next;
    next.reserve(sums.size() * a.size());
    for (auto s : sums)
      for (auto x : a) next.push_back(s + x);
    sums = std::move(next);
  }
  std::sort(sums.begin(), sums.end());
  return sums;
}

/// The k smallest sums by full enumeration and sorting.
inline ct::Multiset naive_topk(const ct::Arrays& arrays, std::size_t k) {
  auto s = all_sums_sorted(arrays);
  s.resize(k);
  return ct::Multiset(s);
}

/// The k smallest sums, sorted, merging one array at a time and keeping the k
/// smallest partial sums (exact: a top-k sum has a top-k prefix).
inline std::vector<ct::ScoreKey> merged_topk(const ct::Arrays& arrays, std::size_t k) {
  std::vector<ct::ScoreKey> partial{ct::ScoreKey(0.0)};
  for (const auto& a : arrays) {
    std::vector<ct::ScoreKey> next;
    next.reserve(partial.size() * a.size());
    for (auto s : partial)
      for (auto x : a) next.push_back(s + x);
    std::sort(next.begin(), next.end());
    if (next.size() > k) next.resize(k);
    partial = std::move(next);
  }
  return partial;
}

inline ct::Multiset naive_topk(std::vector<ct::ScoreKey> v, std::size_t k) {
  std::sort(v.begin(), v.end());
  v.resize(k);
  return ct::Multiset(v);
}

/// Small integers, so ties are common and every sum is exact.
inline ct::Arrays random_arrays(std::mt19937_64& rng, std::size_t m, std::size_t n, int range) {
  ct::Arrays out(m);
  for (auto& a : out)
    for (std::size_t i = 0; i < n; ++i) a.emplace_back(static_cast<double>(rng() % static_cast<unsigned>(range)));
  return out;
}

inline std::vector<ct::ScoreKey> random_values(std::mt19937_64& rng, std::size_t n, int range) {
  std::vector<ct::ScoreKey> v;
  for (std::size_t i = 0; i < n; ++i) v.emplace_back(static_cast<double>(rng() % static_cast<unsigned>(range)));
  return v;
}

/// Generator over explicitly given layers (not required to follow a schedule).
class LayerListGenerator final : public ct::LohGenerator {
 public:
  LayerListGenerator(std::vector<std::vector<ct::ScoreKey>> layers, double alpha = 1.5)
      : LohGenerator(alpha), layers_(std::move(layers)) {
    generate_next_layer();
  }
  [[nodiscard]] bool has_more_layers() const override { return layer_count() < layers_.size(); }
  [[nodiscard]] std::span<const ct::ScoreKey> layer(std::size_t i) const override { return layers_.at(i); }

 protected:
  void produce_next_layer() override { record_layer(layers_[layer_count()]); }

 private:
  std::vector<std::vector<ct::ScoreKey>> layers_;
};

}  // namespace testing_support
