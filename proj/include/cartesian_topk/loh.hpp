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

/** \file loh.hpp
 *  \brief Layer-ordered heaps (LOHs) of rank alpha.
 *
 *  An LOH partitions values into layers L0, L1, ... with max(Li) <= min(Li+1);
 *  order inside a layer is arbitrary. Cumulative layer totals follow
 *
 *      T0 = 1,  Ti+1 = max(Ti + 1, ceil(alpha * Ti)),
 *
 *  so the first two layers hold one value each, layer sizes never shrink
 *  (except a truncated final layer), never more than double, and their ratio
 *  tends to alpha.
 *
 *  Layers, offsets and the generator interface are 0-based.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cartesian_topk/score.hpp"
#include "cartesian_topk/select.hpp"

namespace cartesian_topk {

inline void check_alpha(double alpha) {
  if (!(alpha > 1.0 && alpha < 2.0)) throw parameter_error("alpha must lie in the open interval (1, 2)");
}

/// Cumulative total of the layer that follows a layer ending at `total`.
inline std::size_t next_total(double alpha, std::size_t total) noexcept {
  constexpr auto max = std::numeric_limits<std::size_t>::max();
  if (total >= max / 2) return max;
  // The relative slack absorbs representation error in alpha (1.1 * 10 must be 11).
  double scaled = std::ceil(alpha * static_cast<double>(total) * (1.0 - 1e-12));
  auto grown = scaled >= static_cast<double>(max) ? max : static_cast<std::size_t>(scaled);
  return std::max(total + 1, grown);
}

/// Untruncated size of the layer following a layer that ends at `total`.
inline std::size_t next_layer_size(double alpha, std::size_t total) noexcept {
  return next_total(alpha, total) - total;
}

/// Layer sizes of an LOH of `n` values; the final layer may be truncated.
class LayerSchedule {
 public:
  LayerSchedule(double alpha, std::size_t n) : alpha_(alpha) {
    check_alpha(alpha);
    detail::require(n >= 1, "LayerSchedule: n must be positive");
    for (std::size_t t = 1;; t = next_total(alpha, t)) {
      totals_.push_back(std::min(t, n));
      if (t >= n) break;
    }
  }

  [[nodiscard]] double alpha() const noexcept { return alpha_; }
  [[nodiscard]] std::size_t total() const noexcept { return totals_.back(); }
  [[nodiscard]] std::size_t layer_count() const noexcept { return totals_.size(); }
  [[nodiscard]] std::size_t start(std::size_t i) const { return i == 0 ? 0 : totals_.at(i - 1); }
  /// Number of values in layers 0..i inclusive.
  [[nodiscard]] std::size_t cumulative(std::size_t i) const { return totals_.at(i); }
  [[nodiscard]] std::size_t size(std::size_t i) const { return totals_.at(i) - start(i); }
  /// Size layer i would have without truncation at n.
  [[nodiscard]] std::size_t scheduled_size(std::size_t i) const {
    return i == 0 ? 1 : next_layer_size(alpha_, totals_.at(i - 1));
  }
  [[nodiscard]] bool is_full(std::size_t i) const { return size(i) == scheduled_size(i); }
  [[nodiscard]] std::vector<std::size_t> sizes() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < layer_count(); ++i) out.push_back(size(i));
    return out;
  }

 private:
  double alpha_;
  std::vector<std::size_t> totals_;
};

/// Contiguous block of offsets in the next layer.
struct ChildRange {
  std::size_t first = 0;
  std::size_t count = 0;
};

/** \brief Children of offset `j` in a layer of `cur` nodes whose next layer is
 *  scheduled to hold `next` nodes (cur <= next <= 2 cur).
 *
 *  The first `next - cur` nodes have two children {2j, 2j+1}; the remaining
 *  `2 cur - next` nodes have one child at j + (next - cur). The images
 *  partition [0, next).
 */
inline ChildRange child_offsets(std::size_t cur, std::size_t next, std::size_t j) {
  detail::require(j < cur && cur <= next && next <= 2 * cur, "child_offsets: invalid layer geometry");
  std::size_t two_child = next - cur;
  if (j < two_child) return {2 * j, 2};
  return {j + two_child, 1};
}

/// Children of (layer i, offset j) restricted to the realized size of layer i+1.
inline ChildRange children_of(const LayerSchedule& schedule, std::size_t i, std::size_t j) {
  detail::require(i + 1 < schedule.layer_count(), "children_of: layer i+1 does not exist");
  detail::require(j < schedule.size(i), "children_of: offset outside layer i");
  ChildRange r = child_offsets(schedule.size(i), schedule.scheduled_size(i + 1), j);
  std::size_t actual = schedule.size(i + 1);
  if (r.first >= actual) return {r.first, 0};
  r.count = std::min(r.count, actual - r.first);
  return r;
}

/** \brief A materialized LOH.
 *
 *  Values live in one contiguous block with a directory of layer starts.
 *  Heaps built by `lohify` carry their schedule; heaps assembled from
 *  explicit layers do not, and `verify_loh` then checks ordering only.
 */
class LayerOrderedHeap {
 public:
  static LayerOrderedHeap from_layers(const std::vector<std::vector<ScoreKey>>& layers) {
    LayerOrderedHeap h;
    for (const auto& l : layers) {
      h.starts_.push_back(h.values_.size());
      h.values_.insert(h.values_.end(), l.begin(), l.end());
    }
    return h;
  }

  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] std::size_t layer_count() const noexcept { return starts_.size(); }
  [[nodiscard]] std::span<const ScoreKey> layer(std::size_t i) const {
    std::size_t end = i + 1 < starts_.size() ? starts_[i + 1] : values_.size();
    return std::span<const ScoreKey>(values_).subspan(starts_.at(i), end - starts_[i]);
  }
  [[nodiscard]] std::span<const ScoreKey> values() const noexcept { return values_; }
  [[nodiscard]] const LayerSchedule* schedule() const noexcept {
    return schedule_ ? &*schedule_ : nullptr;
  }

 private:
  friend LayerOrderedHeap lohify(std::span<const ScoreKey>, double);

  std::vector<ScoreKey> values_;
  std::vector<std::size_t> starts_;
  std::optional<LayerSchedule> schedule_;
};

namespace detail {
// Partitions at the middle pending boundary first, so each value takes part in
// O(log #layers) partitions.
inline void partition_layers(std::span<ScoreKey> v, std::span<const std::size_t> bounds, std::size_t base) {
  if (bounds.empty()) return;
  std::size_t mid = bounds.size() / 2;
  std::size_t cut = bounds[mid] - base;
  partition_smallest(v, cut);
  partition_layers(v.first(cut), bounds.first(mid), base);
  partition_layers(v.subspan(cut), bounds.subspan(mid + 1), base + cut);
}
}  // namespace detail

/// Permutes a copy of `values` into an LOH of rank alpha.
inline LayerOrderedHeap lohify(std::span<const ScoreKey> values, double alpha) {
  check_alpha(alpha);
  detail::require(!values.empty(), "lohify: input must be nonempty");
  LayerOrderedHeap h;
  h.schedule_.emplace(alpha, values.size());
  h.values_.assign(values.begin(), values.end());
  const LayerSchedule& s = *h.schedule_;
  std::vector<std::size_t> bounds;
  for (std::size_t i = 0; i < s.layer_count(); ++i) h.starts_.push_back(s.start(i));
  bounds.assign(h.starts_.begin() + 1, h.starts_.end());
  detail::partition_layers(std::span<ScoreKey>(h.values_), bounds, 0);
  return h;
}

/// True iff adjacent layers are ordered and, when a schedule is attached, sizes match it.
inline bool verify_loh(const LayerOrderedHeap& h) {
  if (const LayerSchedule* s = h.schedule()) {
    if (s->layer_count() != h.layer_count() || s->total() != h.size()) return false;
    for (std::size_t i = 0; i < h.layer_count(); ++i) {
      if (h.layer(i).size() != s->size(i)) return false;
    }
  }
  for (std::size_t i = 0; i + 1 < h.layer_count(); ++i) {
    auto cur = h.layer(i);
    auto next = h.layer(i + 1);
    if (cur.empty() || next.empty()) return false;
    if (*std::max_element(cur.begin(), cur.end()) > *std::min_element(next.begin(), next.end())) return false;
  }
  return true;
}

/** \brief The k smallest values via repeated LOHification.
 *
 *  Whole layers are taken smallest-first while they fit; the layer that would
 *  overshoot k is itself LOHified and the search continues inside it.
 */
inline std::vector<ScoreKey> select_k_loh(std::span<const ScoreKey> values, std::size_t k, double alpha) {
  check_alpha(alpha);
  detail::require(k >= 1 && k <= values.size(), "select_k_loh: requires 1 <= k <= |values|");
  std::vector<ScoreKey> out;
  out.reserve(k);
  std::vector<ScoreKey> work(values.begin(), values.end());
  while (out.size() < k) {
    LayerOrderedHeap h = lohify(work, alpha);
    std::size_t need = k - out.size();
    for (std::size_t i = 0; i < h.layer_count(); ++i) {
      auto layer = h.layer(i);
      if (layer.size() <= need) {
        out.insert(out.end(), layer.begin(), layer.end());
        need -= layer.size();
        if (need == 0) break;
      } else {
        work.assign(layer.begin(), layer.end());
        break;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Online layer generators
// ---------------------------------------------------------------------------

/** \brief Something that produces the layers of an LOH one at a time.
 *
 *  Layers appear smallest-first and never change once produced. Every layer
 *  but the last has exactly its scheduled size.
 */
class LohGenerator {
 public:
  explicit LohGenerator(double alpha) : alpha_(alpha) { check_alpha(alpha); }
  virtual ~LohGenerator() = default;
  LohGenerator(const LohGenerator&) = delete;
  LohGenerator& operator=(const LohGenerator&) = delete;

  [[nodiscard]] double alpha() const noexcept { return alpha_; }
  [[nodiscard]] virtual bool has_more_layers() const = 0;
  [[nodiscard]] virtual std::span<const ScoreKey> layer(std::size_t i) const = 0;

  void generate_next_layer() {
    detail::require(has_more_layers(), "LohGenerator: no more layers");
    produce_next_layer();
  }

  [[nodiscard]] std::size_t layer_count() const noexcept { return cumulative_.size(); }
  [[nodiscard]] std::size_t total_generated() const noexcept {
    return cumulative_.empty() ? 0 : cumulative_.back();
  }
  /// Values in layers 0..i.
  [[nodiscard]] std::size_t cumulative(std::size_t i) const { return cumulative_.at(i); }
  [[nodiscard]] std::size_t size_of_last_layer() const noexcept {
    return cumulative_.empty() ? 0 : layer(cumulative_.size() - 1).size();
  }
  [[nodiscard]] ScoreKey max_generated() const {
    detail::require(!cumulative_.empty(), "LohGenerator: nothing generated yet");
    return max_;
  }
  /// The single value of layer 0: the minimum of the whole LOH.
  [[nodiscard]] ScoreKey min_value() const { return layer(0).front(); }

  /// Scheduled size of the layer after layer i.
  [[nodiscard]] std::size_t scheduled_size_after(std::size_t i) const {
    return next_layer_size(alpha_, cumulative(i));
  }

 protected:
  virtual void produce_next_layer() = 0;

  /// Derived classes call this once per produced layer.
  void record_layer(std::span<const ScoreKey> layer) {
    detail::require(!layer.empty(), "LohGenerator: empty layer");
    ScoreKey top = *std::max_element(layer.begin(), layer.end());
    max_ = cumulative_.empty() ? top : std::max(max_, top);
    cumulative_.push_back(total_generated() + layer.size());
  }

 private:
  double alpha_;
  std::vector<std::size_t> cumulative_;
  ScoreKey max_;
};

/// Leaf generator: the input is LOHified up front and layers are revealed on demand.
class LohLeaf final : public LohGenerator {
 public:
  LohLeaf(std::span<const ScoreKey> values, double alpha) : LohGenerator(alpha), heap_(lohify(values, alpha)) {
    generate_next_layer();
  }

  [[nodiscard]] bool has_more_layers() const override { return layer_count() < heap_.layer_count(); }
  [[nodiscard]] std::span<const ScoreKey> layer(std::size_t i) const override {
    detail::require(i < layer_count(), "LohLeaf: layer not generated");
    return heap_.layer(i);
  }
  [[nodiscard]] const LayerOrderedHeap& heap() const noexcept { return heap_; }

 protected:
  void produce_next_layer() override { record_layer(heap_.layer(layer_count())); }

 private:
  LayerOrderedHeap heap_;
};

}  // namespace cartesian_topk
