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

/** \file select.hpp
 *  \brief One-dimensional k-selection.
 *
 *  `partition_smallest` is an introselect: randomized quickselect with a
 *  three-way partition, falling back to median-of-medians pivots once the
 *  recursion depth budget is spent, so the worst case stays linear.
 */

#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "cartesian_topk/score.hpp"

namespace cartesian_topk {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

template <class T, class Less>
void insertion_sort(std::span<T> v, Less& less) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    T x = std::move(v[i]);
    std::size_t j = i;
    for (; j > 0 && less(x, v[j - 1]); --j) v[j] = std::move(v[j - 1]);
    v[j] = std::move(x);
  }
}

template <class T, class Less>
void partition_smallest_impl(std::span<T> v, std::size_t k, Less& less, int depth_budget,
                             std::uint64_t& rng);

// Median of the group medians; groups of five.
template <class T, class Less>
T median_of_medians(std::span<T> v, Less& less, std::uint64_t& rng) {
  std::vector<T> medians;
  medians.reserve(v.size() / 5 + 1);
  for (std::size_t i = 0; i < v.size(); i += 5) {
    auto group = v.subspan(i, std::min<std::size_t>(5, v.size() - i));
    insertion_sort(group, less);
    medians.push_back(group[group.size() / 2]);
  }
  std::size_t mid = medians.size() / 2;
  // A zero budget keeps the nested selection deterministic as well.
  partition_smallest_impl(std::span<T>(medians), mid + 1, less, 0, rng);
  return *std::max_element(medians.begin(), medians.begin() + static_cast<std::ptrdiff_t>(mid) + 1, less);
}

template <class T, class Less>
void partition_smallest_impl(std::span<T> v, std::size_t k, Less& less, int depth_budget,
                             std::uint64_t& rng) {
  std::size_t lo = 0;
  std::size_t hi = v.size();
  while (hi - lo > 16) {
    if (k <= lo || k >= hi) return;
    auto range = v.subspan(lo, hi - lo);
    T pivot = depth_budget > 0 ? range[splitmix64(rng) % range.size()]
                               : median_of_medians(range, less, rng);
    --depth_budget;

    // Dutch-flag partition: [lo, lt) < pivot, [lt, gt) == pivot, [gt, hi) > pivot.
    std::size_t lt = lo, i = lo, gt = hi;
    while (i < gt) {
      if (less(v[i], pivot)) {
        std::swap(v[lt++], v[i++]);
      } else if (less(pivot, v[i])) {
        std::swap(v[i], v[--gt]);
      } else {
        ++i;
      }
    }
    if (k < lt) {
      hi = lt;
    } else if (k > gt) {
      lo = gt;
    } else {
      return;
    }
  }
  insertion_sort(v.subspan(lo, hi - lo), less);
}

}  // namespace detail

/** \brief Rearranges `v` so that v[0..k) <= v[k..n) under `less`.
 *
 *  Expected linear time; worst case linear through the median-of-medians
 *  fallback. Order within each side is unspecified.
 */
template <class T, class Less = std::less<>>
void partition_smallest(std::span<T> v, std::size_t k, Less less = {}) {
  if (k == 0 || k >= v.size()) return;
  int budget = 2 * static_cast<int>(std::bit_width(v.size())) + 4;
  std::uint64_t rng = 0x5DEECE66Dull ^ (v.size() * 0x9E3779B97F4A7C15ull) ^ k;
  detail::partition_smallest_impl(v, k, less, budget, rng);
}

/// The k smallest values (as a multiset, in unspecified order).
inline std::vector<ScoreKey> select_k(std::span<const ScoreKey> values, std::size_t k) {
  detail::require(k >= 1 && k <= values.size(), "select_k: requires 1 <= k <= |values|");
  std::vector<ScoreKey> work(values.begin(), values.end());
  partition_smallest(std::span<ScoreKey>(work), k);
  work.resize(k);
  return work;
}

/// In-place variant used by callers that own a scratch buffer.
inline void select_k_in_place(std::vector<ScoreKey>& values, std::size_t k) {
  detail::require(k >= 1 && k <= values.size(), "select_k: requires 1 <= k <= |values|");
  partition_smallest(std::span<ScoreKey>(values), k);
  values.resize(k);
}

}  // namespace cartesian_topk
