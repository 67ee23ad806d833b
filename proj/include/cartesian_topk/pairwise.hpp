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

/** \file pairwise.hpp
 *  \brief Selection on A + B: Soft-Select over binary heaps, and an online LOH
 *  generator for A + B built from two child generators.
 */

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "cartesian_topk/loh.hpp"
#include "cartesian_topk/score.hpp"
#include "cartesian_topk/select.hpp"
#include "cartesian_topk/soft_heap.hpp"

namespace cartesian_topk {

namespace detail {
inline std::size_t saturating_mul(std::size_t a, std::size_t b) noexcept {
  if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) return std::numeric_limits<std::size_t>::max();
  return a * b;
}
}  // namespace detail

/// Soft-heap counters of a single selection.
struct SoftSelectStats {
  std::uint64_t heap_insertions = 0;
  std::uint64_t corrupted = 0;
  std::uint64_t pops = 0;
};

/** \brief The k smallest values of A + B as a multiset.
 *
 *  A and B are heapified, and a soft heap walks the product heap: popping
 *  (i, 0) proposes (children of i, 0) and (i, children of 0); popping (i, j)
 *  with j > 0 proposes (i, children of j). Every popped or newly corrupted
 *  pair contributes its value and proposes its children; after k pops the
 *  collected values (at most (1 + 2 eps) k + O(1) of them) are reduced to k.
 */
inline std::vector<ScoreKey> soft_select_pairwise(std::span<const ScoreKey> a, std::span<const ScoreKey> b,
                                                  std::size_t k, double epsilon = 0.25,
                                                  SoftSelectStats* stats = nullptr) {
  detail::require(!a.empty() && !b.empty(), "soft_select_pairwise: inputs must be nonempty");
  detail::require(k >= 1 && k <= detail::saturating_mul(a.size(), b.size()),
                  "soft_select_pairwise: requires 1 <= k <= |A| |B|");
  std::vector<ScoreKey> ha(a.begin(), a.end());
  std::vector<ScoreKey> hb(b.begin(), b.end());
  std::make_heap(ha.begin(), ha.end(), std::greater<>{});
  std::make_heap(hb.begin(), hb.end(), std::greater<>{});

  struct Pair {
    std::size_t i, j;
  };
  SoftHeap<Pair> heap(epsilon);
  SoftSelectStats local;
  auto insert = [&](std::size_t i, std::size_t j) {
    heap.insert(ha[i] + hb[j], Pair{i, j});
    ++local.heap_insertions;
  };
  std::vector<ScoreKey> results;
  using Entry = typename SoftHeap<Pair>::Entry;
  auto process = [&](const Entry& e) {
    results.push_back(e.original_key);
    auto [i, j] = e.payload;
    if (j == 0) {
      for (std::size_t c = 2 * i + 1; c <= 2 * i + 2; ++c)
        if (c < ha.size()) insert(c, 0);
      for (std::size_t c = 1; c <= 2; ++c)
        if (c < hb.size()) insert(i, c);
    } else {
      for (std::size_t c = 2 * j + 1; c <= 2 * j + 2; ++c)
        if (c < hb.size()) insert(i, c);
    }
  };

  insert(0, 0);
  std::vector<Entry> batch;
  for (std::size_t r = 0; r < k && !heap.empty(); ++r) {
    batch.clear();
    Entry e = heap.extract_min(batch);
    ++local.pops;
    if (!e.corrupted) batch.push_back(e);
    for (const Entry& x : batch) process(x);
  }
  local.corrupted = heap.corrupted_count();
  if (stats) *stats = local;
  select_k_in_place(results, k);
  return results;
}

/// How concatenation_select ranks two generators by their largest value so far.
enum class ConcatMetric {
  raw,           // compare max_generated directly
  min_relative,  // compare max_generated - min_value (the operands A' and B')
};

struct ConcatResult {
  std::size_t layers_a = 0;
  std::size_t layers_b = 0;
  std::size_t values_generated = 0;  // during this call
};

/** \brief Generates layers of `a` and `b` until their generated layers contain
 *  the k smallest values of the concatenation a | b.
 *
 *  Phase one generates on the side with the smaller maximum until at least k
 *  values exist. Phase two lets the side with the smaller maximum catch up by
 *  at most one layer of the other side. Both generators must already hold
 *  their first layer. In `min_relative` mode maxima are compared after
 *  subtracting each side's minimum, which is what an A + B node needs.
 */
inline ConcatResult concatenation_select(LohGenerator& a, LohGenerator& b, std::size_t k,
                                         ConcatMetric metric = ConcatMetric::raw) {
  detail::require(a.layer_count() > 0 && b.layer_count() > 0,
                  "concatenation_select: generators must hold their first layer");
  auto key = [metric](const LohGenerator& g) {
    return metric == ConcatMetric::raw ? g.max_generated() : g.max_generated() - g.min_value();
  };
  std::size_t before = a.total_generated() + b.total_generated();

  while (a.total_generated() + b.total_generated() < k) {
    bool more_a = a.has_more_layers();
    bool more_b = b.has_more_layers();
    if (!more_a && !more_b) break;
    if (!more_b || (more_a && key(a) <= key(b))) {
      a.generate_next_layer();
    } else {
      b.generate_next_layer();
    }
  }

  if (key(a) != key(b)) {
    bool a_smaller = key(a) < key(b);
    LohGenerator& small = a_smaller ? a : b;
    LohGenerator& large = a_smaller ? b : a;
    std::size_t target = large.size_of_last_layer();
    std::size_t extra = 0;
    while (extra < target && small.has_more_layers()) {
      small.generate_next_layer();
      extra += small.size_of_last_layer();
      if (key(small) >= key(large)) break;
    }
  }
  return {a.layer_count(), b.layer_count(), a.total_generated() + b.total_generated() - before};
}

/// Counters of one A + B node.
struct AbNodeStats {
  std::uint64_t heap_insertions = 0;
  std::uint64_t corrupted = 0;
  std::uint64_t pops = 0;
  std::uint64_t fallback_generations = 0;  // child layers forced because a layer came up short
};

/** \brief Online LOH generator for A + B.
 *
 *  Layer L of the output is produced by (1) extending A and B with
 *  concatenation_select so that the T_L + 1 smallest values of A' | B' are
 *  available, (2) releasing parked candidates whose coordinates now exist, (3)
 *  c_L soft-heap pops over the product of the two LOHs, and (4) a linear
 *  selection of c_L values from everything popped or corrupted, the remainder
 *  carried over. Candidates referring to a layer not yet generated wait in one
 *  of three purgatories (blocked on A, on B, or on both).
 *
 *  A coordinate (l, o) has children in layer l + 1 per `child_offsets`. The
 *  product heap is rooted at (0,0) and shaped like the binary-heap case:
 *  (a, root_B) spawns (children of a, root_B) and (a, children of root_B);
 *  (a, b) spawns (a, children of b).
 */
class AbNode final : public LohGenerator {
 public:
  AbNode(std::unique_ptr<LohGenerator> left, std::unique_ptr<LohGenerator> right, double epsilon = 0.25)
      : LohGenerator(left->alpha()), left_(std::move(left)), right_(std::move(right)), heap_(epsilon) {
    detail::require(left_->alpha() == right_->alpha(), "AbNode: children must share alpha");
    detail::require(left_->layer_count() > 0 && right_->layer_count() > 0,
                    "AbNode: children must hold their first layer");
    generate_next_layer();
  }

  [[nodiscard]] bool has_more_layers() const override { return !exhausted_; }
  [[nodiscard]] std::span<const ScoreKey> layer(std::size_t i) const override {
    detail::require(i < layers_.size(), "AbNode: layer not generated");
    return layers_[i];
  }

  [[nodiscard]] const LohGenerator& left() const noexcept { return *left_; }
  [[nodiscard]] const LohGenerator& right() const noexcept { return *right_; }
  [[nodiscard]] const AbNodeStats& stats() const noexcept { return stats_; }

  /// Candidate accounting: every pair created is in exactly one state.
  struct Census {
    std::uint64_t created = 0;
    std::uint64_t processed = 0;
    std::uint64_t dropped = 0;
    std::uint64_t in_heap_unprocessed = 0;
    std::uint64_t parked = 0;
    std::uint64_t carried = 0;
  };
  [[nodiscard]] Census census() const noexcept {
    return {created_,
            processed_,
            dropped_,
            heap_.size() - heap_.live_corrupted_count() + heap_.pending_corrupted_count(),
            purgatory_a_.size() + purgatory_b_.size() + purgatory_ab_.size(),
            carryover_.size()};
  }

 protected:
  void produce_next_layer() override {
    std::size_t target = layer_count() == 0 ? 1 : next_total(alpha(), total_generated());
    std::size_t want = target - total_generated();

    concatenation_select(*left_, *right_, target + 1, ConcatMetric::min_relative);
    if (!started_) {
      started_ = true;
      consider(Pair{{0, 0}, {0, 0}});
    }
    release_parked();

    std::vector<ScoreKey> pool = std::move(carryover_);
    carryover_.clear();
    pool_ = &pool;
    std::size_t fresh = 0;
    std::vector<Entry> batch;
    for (;;) {
      while (fresh < want && !heap_.empty()) {
        batch.clear();
        Entry e = heap_.extract_min(batch);
        ++stats_.pops;
        if (!e.corrupted) batch.push_back(e);
        for (const Entry& x : batch) process(x);
        ++fresh;
      }
      if (pool.size() >= want || !force_parked(true)) break;
    }
    batch.clear();
    heap_.flush_corrupted(batch);
    for (const Entry& x : batch) process(x);
    pool_ = nullptr;

    std::vector<ScoreKey> out;
    if (pool.size() <= want) {
      out = std::move(pool);
    } else {
      partition_smallest(std::span<ScoreKey>(pool), want);
      out.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(want));
      carryover_.assign(pool.begin() + static_cast<std::ptrdiff_t>(want), pool.end());
    }
    layers_.push_back(std::move(out));
    record_layer(layers_.back());

    stats_.corrupted += heap_.corrupted_count();
    for (Entry& e : heap_.drain()) {
      if (e.corrupted) continue;
      heap_.insert(e.original_key, e.payload);
      ++stats_.heap_insertions;
    }
    // Settle candidates parked on layers that turn out not to exist, so that
    // has_more_layers() is exact.
    while (heap_.empty() && carryover_.empty() && force_parked(false)) {
    }
    exhausted_ = heap_.empty() && carryover_.empty() && parked_empty();
  }

 private:
  struct Coord {
    std::uint32_t layer, offset;
  };
  struct Pair {
    Coord a, b;
  };
  using Entry = typename SoftHeap<Pair>::Entry;
  enum class Where { realized, blocked, gone };

  static Where locate(const LohGenerator& g, Coord c) {
    if (c.layer < g.layer_count()) return c.offset < g.layer(c.layer).size() ? Where::realized : Where::gone;
    return g.has_more_layers() ? Where::blocked : Where::gone;
  }

  ScoreKey value(Pair p) const {
    return left_->layer(p.a.layer)[p.a.offset] + right_->layer(p.b.layer)[p.b.offset];
  }

  void consider(Pair p) {
    ++created_;
    reclassify(p);
  }

  void reclassify(Pair p) {
    Where wa = locate(*left_, p.a);
    Where wb = locate(*right_, p.b);
    if (wa == Where::gone || wb == Where::gone) {
      ++dropped_;
    } else if (wa == Where::realized && wb == Where::realized) {
      heap_.insert(value(p), p);
      ++stats_.heap_insertions;
    } else if (wa == Where::blocked && wb == Where::blocked) {
      purgatory_ab_.push_back(p);
    } else if (wa == Where::blocked) {
      purgatory_a_.push_back(p);
    } else {
      purgatory_b_.push_back(p);
    }
  }

  void rescan(std::vector<Pair>& list) {
    std::vector<Pair> waiting;
    waiting.swap(list);
    for (Pair p : waiting) reclassify(p);
  }

  void release_parked() {
    bool grew_a = left_->layer_count() > seen_a_;
    bool grew_b = right_->layer_count() > seen_b_;
    bool done_a = !left_->has_more_layers();
    bool done_b = !right_->has_more_layers();
    if (grew_a || done_a) rescan(purgatory_a_);
    if (grew_b || done_b) rescan(purgatory_b_);
    if (grew_a || grew_b || done_a || done_b) rescan(purgatory_ab_);
    seen_a_ = left_->layer_count();
    seen_b_ = right_->layer_count();
  }

  [[nodiscard]] bool parked_empty() const noexcept {
    return purgatory_a_.empty() && purgatory_b_.empty() && purgatory_ab_.empty();
  }

  // Generates one more layer on each side something is parked on. False when
  // nothing is parked.
  bool force_parked(bool count) {
    if (parked_empty()) return false;
    bool need_a = !purgatory_a_.empty() || !purgatory_ab_.empty();
    bool need_b = !purgatory_b_.empty() || !purgatory_ab_.empty();
    if (need_a && left_->has_more_layers()) {
      left_->generate_next_layer();
      stats_.fallback_generations += count;
    }
    if (need_b && right_->has_more_layers()) {
      right_->generate_next_layer();
      stats_.fallback_generations += count;
    }
    release_parked();
    return true;
  }

  template <class Emit>
  static void propose_children(const LohGenerator& g, Coord c, Emit&& emit) {
    // Only the final layer can be truncated, and it has no successor.
    if (c.layer + 1 == g.layer_count() && !g.has_more_layers()) return;
    ChildRange r = child_offsets(g.layer(c.layer).size(), g.scheduled_size_after(c.layer), c.offset);
    for (std::size_t t = 0; t < r.count; ++t)
      emit(Coord{c.layer + 1, static_cast<std::uint32_t>(r.first + t)});
  }

  void process(const Entry& e) {
    ++processed_;
    pool_->push_back(e.original_key);
    Pair p = e.payload;
    if (p.b.layer == 0 && p.b.offset == 0) {
      propose_children(*left_, p.a, [&](Coord c) { consider(Pair{c, p.b}); });
    }
    propose_children(*right_, p.b, [&](Coord c) { consider(Pair{p.a, c}); });
  }

  std::unique_ptr<LohGenerator> left_;
  std::unique_ptr<LohGenerator> right_;
  SoftHeap<Pair> heap_;
  std::vector<std::vector<ScoreKey>> layers_;
  std::vector<ScoreKey> carryover_;
  std::vector<ScoreKey>* pool_ = nullptr;
  std::vector<Pair> purgatory_a_;
  std::vector<Pair> purgatory_b_;
  std::vector<Pair> purgatory_ab_;
  std::size_t seen_a_ = 0;
  std::size_t seen_b_ = 0;
  bool started_ = false;
  bool exhausted_ = false;
  std::uint64_t created_ = 0;
  std::uint64_t processed_ = 0;
  std::uint64_t dropped_ = 0;
  AbNodeStats stats_;
};

}  // namespace cartesian_topk
