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

/** \file selectors.hpp
 *  \brief k-selection on X1 + X2 + ... + Xm.
 *
 *  Five selectors share one interface: SoftTensor, SoftTree, SortTensor,
 *  SortTree and FastSoftTree, plus a brute-force oracle. Index tuples are
 *  0-based positions into the caller's original arrays.
 *
 *  Tree methods use a balanced binary tree with the leaves in input order,
 *  splitting m into ceil(m/2) and floor(m/2) at every node.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_set>
#include <utility>
#include <vector>

#include "cartesian_topk/loh.hpp"
#include "cartesian_topk/pairwise.hpp"
#include "cartesian_topk/score.hpp"
#include "cartesian_topk/select.hpp"
#include "cartesian_topk/soft_heap.hpp"

namespace cartesian_topk {

using Arrays = std::vector<std::vector<ScoreKey>>;
using IndexTuple = std::vector<std::size_t>;

/// Instrumentation of one selector run. Levels are tree depths, root = 0.
struct RunStats {
  std::map<std::size_t, double> pops_per_level;  // average per node at that depth
  std::map<std::size_t, std::uint64_t> generated_per_level;  // total over the depth
  std::uint64_t values_generated = 0;
  std::uint64_t corrupted_count = 0;
  std::uint64_t heap_insertions = 0;
  std::uint64_t fringe_peak = 0;
  std::uint64_t double_advances = 0;  // SortTree pops that pulled from both children
};

struct SelectionResult {
  std::vector<ScoreKey> values;
  bool sorted = false;
  std::optional<std::vector<IndexTuple>> indices;
  RunStats stats;
};

inline constexpr std::uint64_t default_brute_force_guard = 10'000'000;

/// Exponent of m in FastSoftTree's O(k m^e) bound: log2(alpha^2).
inline double theoretical_exponent(double alpha) {
  detail::require(alpha > 0.0, "theoretical_exponent: alpha must be positive");
  return 2.0 * std::log2(alpha);
}

namespace detail {

inline std::uint64_t tensor_cells(const Arrays& arrays) {
  std::uint64_t cells = 1;
  for (const auto& a : arrays) cells = saturating_mul(cells, a.size());
  return cells;
}

inline void check_selection(const Arrays& arrays, std::size_t k) {
  require(!arrays.empty(), "selection: at least one array is required");
  for (const auto& a : arrays) require(!a.empty(), "selection: arrays must be nonempty");
  require(k >= 1 && k <= tensor_cells(arrays), "selection: requires 1 <= k <= product of array sizes");
}

inline ScoreKey sum_at(const Arrays& arrays, std::span<const std::uint32_t> pos) {
  ScoreKey s = arrays[0][pos[0]];
  for (std::size_t t = 1; t < arrays.size(); ++t) s += arrays[t][pos[t]];
  return s;
}

/// Reveals an array in sorted order, one value at a time, through a binary heap.
class IncrementalSorter {
 public:
  explicit IncrementalSorter(const std::vector<ScoreKey>& values) : values_(values) {
    heap_.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) heap_.push_back(i);
    std::make_heap(heap_.begin(), heap_.end(), greater());
  }

  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] std::size_t revealed() const noexcept { return order_.size(); }

  /// Makes the sorted prefix at least t + 1 long; t must be < size().
  void reveal(std::size_t t) {
    while (order_.size() <= t) {
      std::pop_heap(heap_.begin(), heap_.end(), greater());
      order_.push_back(heap_.back());
      heap_.pop_back();
    }
  }
  [[nodiscard]] ScoreKey value(std::size_t t) const { return values_[order_[t]]; }
  [[nodiscard]] std::size_t original_index(std::size_t t) const { return order_[t]; }

 private:
  struct Greater {
    const std::vector<ScoreKey>* values;
    bool operator()(std::size_t a, std::size_t b) const {
      return std::tie((*values)[b], b) < std::tie((*values)[a], a);
    }
  };
  [[nodiscard]] Greater greater() const noexcept { return {&values_}; }

  const std::vector<ScoreKey>& values_;
  std::vector<std::size_t> heap_;
  std::vector<std::size_t> order_;
};

inline void record_level(std::vector<std::pair<double, std::size_t>>& acc, std::size_t depth, double amount) {
  if (acc.size() <= depth) acc.resize(depth + 1);
  acc[depth].first += amount;
  acc[depth].second += 1;
}

inline void finish_levels(RunStats& s, const std::vector<std::pair<double, std::size_t>>& acc) {
  for (std::size_t d = 0; d < acc.size(); ++d) {
    if (acc[d].second) s.pops_per_level[d] = acc[d].first / static_cast<double>(acc[d].second);
  }
}

}  // namespace detail

/** \brief Oracle: enumerates every sum and returns the k smallest, sorted, with indices.
 *
 *  Throws guard_error when the tensor has more than `guard` cells. Sums are
 *  accumulated left to right; ties are ordered by lexicographic index.
 */
inline SelectionResult brute_force_select(const Arrays& arrays, std::size_t k,
                                          std::uint64_t guard = default_brute_force_guard) {
  detail::require(!arrays.empty(), "selection: at least one array is required");
  for (const auto& a : arrays) detail::require(!a.empty(), "selection: arrays must be nonempty");
  std::uint64_t cells = detail::tensor_cells(arrays);
  if (cells > guard) {
    throw guard_error("brute_force_select: " + std::to_string(cells) + " tensor cells exceed the guard of " +
                      std::to_string(guard));
  }
  detail::check_selection(arrays, k);
  const std::size_t m = arrays.size();

  // Odometer over all tuples with running prefix sums.
  auto enumerate = [&](auto&& visit) {
    std::vector<std::size_t> pos(m, 0);
    std::vector<ScoreKey> prefix(m);
    prefix[0] = arrays[0][0];
    for (std::size_t t = 1; t < m; ++t) prefix[t] = prefix[t - 1] + arrays[t][0];
    for (;;) {
      visit(prefix[m - 1], pos);
      std::size_t t = m;
      while (t > 0 && pos[t - 1] + 1 == arrays[t - 1].size()) pos[--t] = 0;
      if (t == 0) return;
      ++pos[t - 1];
      for (std::size_t u = t - 1; u < m; ++u) prefix[u] = u == 0 ? arrays[0][pos[0]] : prefix[u - 1] + arrays[u][pos[u]];
    }
  };

  std::vector<ScoreKey> all;
  all.reserve(static_cast<std::size_t>(cells));
  enumerate([&](ScoreKey v, const std::vector<std::size_t>&) { all.push_back(v); });
  partition_smallest(std::span<ScoreKey>(all), k);
  ScoreKey threshold = *std::max_element(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k));
  all = {};

  std::vector<std::pair<ScoreKey, IndexTuple>> picked;
  enumerate([&](ScoreKey v, const std::vector<std::size_t>& pos) {
    if (v <= threshold) picked.emplace_back(v, pos);
  });
  std::sort(picked.begin(), picked.end());
  picked.resize(k);

  SelectionResult r;
  r.sorted = true;
  r.indices.emplace();
  for (auto& [v, idx] : picked) {
    r.values.push_back(v);
    r.indices->push_back(std::move(idx));
  }
  r.stats.values_generated = cells;
  return r;
}

/** \brief SoftTensor: soft-heap selection directly on the m-dimensional heap.
 *
 *  Every axis is binary-heapified, so the tensor is heap-ordered under the
 *  following parent rule: the parent of a tuple halves its rightmost non-root
 *  component. Popping a tuple whose rightmost non-root axis is j proposes, for
 *  each axis t >= j, the tuple advanced to the heap children on axis t. The
 *  soft heap uses eps = 1/(3m).
 */
inline SelectionResult soft_tensor_select(const Arrays& arrays, std::size_t k) {
  detail::check_selection(arrays, k);
  const std::size_t m = arrays.size();
  Arrays heaps = arrays;
  for (auto& h : heaps) {
    detail::require(h.size() <= UINT32_MAX, "soft_tensor_select: arrays are limited to 2^32 values");
    std::make_heap(h.begin(), h.end(), std::greater<>{});
  }

  SoftHeap<std::uint32_t> heap(1.0 / (3.0 * static_cast<double>(m)));
  std::vector<std::uint32_t> arena;  // m positions per tuple
  RunStats stats;
  auto insert = [&](std::span<const std::uint32_t> pos) {
    auto id = static_cast<std::uint32_t>(arena.size() / m);
    arena.insert(arena.end(), pos.begin(), pos.end());
    heap.insert(detail::sum_at(heaps, pos), id);
    ++stats.heap_insertions;
  };

  std::vector<ScoreKey> results;
  std::vector<std::uint32_t> child(m);
  using Entry = SoftHeap<std::uint32_t>::Entry;
  auto process = [&](const Entry& e) {
    results.push_back(e.original_key);
    std::copy_n(arena.begin() + static_cast<std::ptrdiff_t>(e.payload * m), m, child.begin());
    std::size_t j = m;
    while (j > 0 && child[j - 1] == 0) --j;
    j = j == 0 ? 0 : j - 1;
    for (std::size_t t = j; t < m; ++t) {
      std::uint32_t orig = child[t];
      for (std::size_t c = 2 * std::size_t{orig} + 1; c <= 2 * std::size_t{orig} + 2; ++c) {
        if (c >= heaps[t].size()) break;
        child[t] = static_cast<std::uint32_t>(c);
        insert(child);
      }
      child[t] = orig;
    }
  };

  std::vector<std::uint32_t> root(m, 0);
  insert(root);
  std::vector<Entry> batch;
  for (std::size_t r = 0; r < k && !heap.empty(); ++r) {
    batch.clear();
    Entry e = heap.extract_min(batch);
    if (!e.corrupted) batch.push_back(e);
    for (const Entry& x : batch) process(x);
  }
  stats.corrupted_count = heap.corrupted_count();
  stats.values_generated = results.size();
  stats.pops_per_level[0] = static_cast<double>(std::min<std::size_t>(k, results.size()));

  SelectionResult out;
  select_k_in_place(results, k);
  out.values = std::move(results);
  out.stats = std::move(stats);
  return out;
}

/** \brief SoftTree: a balanced tree of pairwise soft selections.
 *
 *  Leaves select min(k, n) values by 1-D selection; an internal node asks both
 *  children for their k smallest and runs soft_select_pairwise on them.
 */
inline SelectionResult soft_tree_select(const Arrays& arrays, std::size_t k) {
  detail::check_selection(arrays, k);
  RunStats stats;
  std::vector<std::pair<double, std::size_t>> levels;

  std::function<std::vector<ScoreKey>(std::size_t, std::size_t, std::size_t)> solve =
      [&](std::size_t lo, std::size_t hi, std::size_t depth) -> std::vector<ScoreKey> {
    if (hi - lo == 1) {
      std::size_t want = std::min(k, arrays[lo].size());
      detail::record_level(levels, depth, static_cast<double>(want));
      stats.values_generated += want;
      return select_k(arrays[lo], want);
    }
    std::size_t mid = lo + (hi - lo + 1) / 2;
    std::vector<ScoreKey> a = solve(lo, mid, depth + 1);
    std::vector<ScoreKey> b = solve(mid, hi, depth + 1);
    std::size_t want = std::min<std::size_t>(k, detail::saturating_mul(a.size(), b.size()));
    SoftSelectStats s;
    auto out = soft_select_pairwise(a, b, want, 0.25, &s);
    stats.heap_insertions += s.heap_insertions;
    stats.corrupted_count += s.corrupted;
    stats.values_generated += want;
    detail::record_level(levels, depth, static_cast<double>(want));
    return out;
  };

  SelectionResult out;
  out.values = solve(0, arrays.size(), 0);
  detail::finish_levels(stats, levels);
  out.stats = std::move(stats);
  return out;
}

/** \brief SortTensor: best-first enumeration of the tensor in sorted order.
 *
 *  Axes are revealed in sorted order on demand. The fringe starts at the
 *  all-zero tuple; popping a tuple inserts its m successors (one axis advanced
 *  by one) unless already seen.
 */
inline SelectionResult sort_tensor_select(const Arrays& arrays, std::size_t k) {
  detail::check_selection(arrays, k);
  const std::size_t m = arrays.size();
  std::vector<detail::IncrementalSorter> axes;
  axes.reserve(m);
  for (const auto& a : arrays) {
    detail::require(a.size() <= UINT32_MAX, "sort_tensor_select: arrays are limited to 2^32 values");
    axes.emplace_back(a);
    axes.back().reveal(0);
  }

  std::vector<std::uint32_t> arena;
  auto tuple = [&](std::size_t id) {
    return std::span<const std::uint32_t>(arena).subspan(id * m, m);
  };
  struct Hash {
    const std::vector<std::uint32_t>* arena;
    std::size_t m;
    std::size_t operator()(std::size_t id) const noexcept {
      std::uint64_t h = 0xcbf29ce484222325ull;
      for (std::size_t t = 0; t < m; ++t) h = (h ^ (*arena)[id * m + t]) * 0x100000001b3ull;
      return static_cast<std::size_t>(h);
    }
  };
  struct Equal {
    const std::vector<std::uint32_t>* arena;
    std::size_t m;
    bool operator()(std::size_t a, std::size_t b) const noexcept {
      return std::equal(arena->begin() + static_cast<std::ptrdiff_t>(a * m),
                        arena->begin() + static_cast<std::ptrdiff_t>((a + 1) * m),
                        arena->begin() + static_cast<std::ptrdiff_t>(b * m));
    }
  };
  std::unordered_set<std::size_t, Hash, Equal> seen(16, Hash{&arena, m}, Equal{&arena, m});

  using Item = std::pair<ScoreKey, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> fringe;
  auto value_of = [&](std::size_t id) {
    auto pos = tuple(id);
    ScoreKey s = axes[0].value(pos[0]);
    for (std::size_t t = 1; t < m; ++t) s += axes[t].value(pos[t]);
    return s;
  };
  auto offer = [&](std::span<const std::uint32_t> pos) {
    std::size_t id = arena.size() / m;
    arena.insert(arena.end(), pos.begin(), pos.end());
    if (!seen.insert(id).second) {
      arena.resize(arena.size() - m);
      return;
    }
    fringe.emplace(value_of(id), id);
  };

  RunStats stats;
  SelectionResult out;
  out.sorted = true;
  out.indices.emplace();
  std::vector<std::uint32_t> pos(m, 0);
  offer(pos);
  while (out.values.size() < k) {
    stats.fringe_peak = std::max<std::uint64_t>(stats.fringe_peak, fringe.size());
    auto [v, id] = fringe.top();
    fringe.pop();
    out.values.push_back(v);
    std::copy(tuple(id).begin(), tuple(id).end(), pos.begin());
    IndexTuple idx(m);
    for (std::size_t t = 0; t < m; ++t) idx[t] = axes[t].original_index(pos[t]);
    out.indices->push_back(std::move(idx));
    for (std::size_t t = 0; t < m; ++t) {
      if (std::size_t{pos[t]} + 1 >= axes[t].size()) continue;
      axes[t].reveal(pos[t] + 1);
      ++pos[t];
      offer(pos);
      --pos[t];
    }
  }
  stats.values_generated = arena.size() / m;
  stats.heap_insertions = arena.size() / m;
  stats.pops_per_level[0] = static_cast<double>(k);
  out.stats = std::move(stats);
  return out;
}

namespace detail {

/// One node of a SortTree: a stream of its subtree's sums in sorted order.
class SortTreeNode {
 public:
  SortTreeNode(const Arrays& arrays, std::size_t lo, std::size_t hi, std::size_t depth)
      : depth_(depth), lo_(lo) {
    if (hi - lo == 1) {
      leaf_.emplace(arrays[lo]);
      return;
    }
    std::size_t mid = lo + (hi - lo + 1) / 2;
    left_ = std::make_unique<SortTreeNode>(arrays, lo, mid, depth + 1);
    right_ = std::make_unique<SortTreeNode>(arrays, mid, hi, depth + 1);
  }

  [[nodiscard]] std::size_t emitted() const noexcept { return values_.size(); }
  [[nodiscard]] ScoreKey value(std::size_t t) const { return values_[t]; }

  /// Produces the next smallest sum; false when the subtree is exhausted.
  bool pull() {
    if (leaf_) {
      if (values_.size() == leaf_->size()) return false;
      leaf_->reveal(values_.size());
      values_.push_back(leaf_->value(values_.size()));
      return true;
    }
    if (values_.empty()) {
      if (!left_->ensure(0) || !right_->ensure(0)) return false;
      push(0, 0);
    }
    if (fringe_.empty()) return false;
    fringe_peak_ = std::max<std::uint64_t>(fringe_peak_, fringe_.size());
    auto [v, i, j] = fringe_.top();
    fringe_.pop();
    values_.push_back(v);
    sources_.emplace_back(i, j);

    std::size_t before = left_->emitted() + right_->emitted();
    if (right_->ensure(j + 1)) push(i, j + 1);
    if (j == 0 && left_->ensure(i + 1)) push(i + 1, 0);
    std::size_t pulled = left_->emitted() + right_->emitted() - before;
    if (values_.size() > 1 && pulled > 1) ++double_advances_;
    return true;
  }

  /// Makes value(t) available; false if the subtree has fewer than t + 1 sums.
  bool ensure(std::size_t t) {
    while (values_.size() <= t) {
      if (!pull()) return false;
    }
    return true;
  }

  void indices_of(std::size_t t, IndexTuple& out) const {
    if (leaf_) {
      out[lo_] = leaf_->original_index(t);
      return;
    }
    left_->indices_of(sources_[t].first, out);
    right_->indices_of(sources_[t].second, out);
  }

  void collect(RunStats& stats, std::vector<std::pair<double, std::size_t>>& levels) const {
    record_level(levels, depth_, static_cast<double>(values_.size()));
    stats.values_generated += values_.size();
    stats.fringe_peak = std::max(stats.fringe_peak, fringe_peak_);
    stats.double_advances += double_advances_;
    stats.heap_insertions += insertions_;
    if (left_) {
      left_->collect(stats, levels);
      right_->collect(stats, levels);
    }
  }

 private:
  void push(std::size_t i, std::size_t j) {
    fringe_.emplace(left_->value(i) + right_->value(j), i, j);
    ++insertions_;
  }

  using Item = std::tuple<ScoreKey, std::size_t, std::size_t>;
  std::size_t depth_;
  std::size_t lo_;
  std::optional<IncrementalSorter> leaf_;
  std::unique_ptr<SortTreeNode> left_;
  std::unique_ptr<SortTreeNode> right_;
  std::vector<ScoreKey> values_;
  std::vector<std::pair<std::size_t, std::size_t>> sources_;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> fringe_;
  std::uint64_t fringe_peak_ = 0;
  std::uint64_t double_advances_ = 0;
  std::uint64_t insertions_ = 0;
};

}  // namespace detail

/** \brief SortTree: a balanced tree of sorted pairwise streams.
 *
 *  Each internal node enumerates the sums of its children's streams in sorted
 *  order from a staircase-shaped fringe: popping (i, j) inserts (i, j+1), and
 *  (i+1, 0) when j = 0. After a node's first pop no pop pulls a new value from
 *  both children. Indices, when requested, are recovered by walking the
 *  recorded (i, j) sources down the tree.
 */
inline SelectionResult sort_tree_select(const Arrays& arrays, std::size_t k, bool want_indices = false) {
  detail::check_selection(arrays, k);
  detail::SortTreeNode root(arrays, 0, arrays.size(), 0);
  root.ensure(k - 1);

  SelectionResult out;
  out.sorted = true;
  for (std::size_t t = 0; t < k; ++t) out.values.push_back(root.value(t));
  if (want_indices) {
    out.indices.emplace();
    for (std::size_t t = 0; t < k; ++t) {
      IndexTuple idx(arrays.size());
      root.indices_of(t, idx);
      out.indices->push_back(std::move(idx));
    }
  }
  std::vector<std::pair<double, std::size_t>> levels;
  root.collect(out.stats, levels);
  detail::finish_levels(out.stats, levels);
  return out;
}

/** \brief FastSoftTree: a balanced tree of online A + B LOH generators.
 *
 *  Leaves LOHify their arrays on construction. The root generates layers until
 *  it holds at least k values; the answer is a 1-D selection over them.
 */
inline SelectionResult fast_soft_tree_select(const Arrays& arrays, std::size_t k, double alpha = 1.1) {
  check_alpha(alpha);
  detail::check_selection(arrays, k);

  std::function<std::unique_ptr<LohGenerator>(std::size_t, std::size_t)> build =
      [&](std::size_t lo, std::size_t hi) -> std::unique_ptr<LohGenerator> {
    if (hi - lo == 1) return std::make_unique<LohLeaf>(arrays[lo], alpha);
    std::size_t mid = lo + (hi - lo + 1) / 2;
    auto left = build(lo, mid);
    auto right = build(mid, hi);
    return std::make_unique<AbNode>(std::move(left), std::move(right));
  };
  std::unique_ptr<LohGenerator> root = build(0, arrays.size());
  while (root->total_generated() < k && root->has_more_layers()) root->generate_next_layer();

  std::vector<ScoreKey> pool;
  pool.reserve(root->total_generated());
  for (std::size_t i = 0; i < root->layer_count(); ++i) {
    auto l = root->layer(i);
    pool.insert(pool.end(), l.begin(), l.end());
  }
  SelectionResult out;
  select_k_in_place(pool, k);
  out.values = std::move(pool);

  RunStats& stats = out.stats;
  std::vector<std::pair<double, std::size_t>> levels;
  std::function<void(const LohGenerator&, std::size_t)> walk = [&](const LohGenerator& g, std::size_t depth) {
    detail::record_level(levels, depth, static_cast<double>(g.total_generated()));
    stats.generated_per_level[depth] += g.total_generated();
    stats.values_generated += g.total_generated();
    if (const auto* ab = dynamic_cast<const AbNode*>(&g)) {
      stats.heap_insertions += ab->stats().heap_insertions;
      stats.corrupted_count += ab->stats().corrupted;
      walk(ab->left(), depth + 1);
      walk(ab->right(), depth + 1);
    }
  };
  walk(*root, 0);
  detail::finish_levels(stats, levels);
  return out;
}

enum class Algorithm { soft_tensor, soft_tree, sort_tensor, sort_tree, fast_soft_tree, brute_force };

inline constexpr Algorithm all_selectors[] = {Algorithm::soft_tensor, Algorithm::soft_tree,
                                              Algorithm::sort_tensor, Algorithm::sort_tree,
                                              Algorithm::fast_soft_tree};

inline std::string_view algorithm_name(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::soft_tensor: return "soft-tensor";
    case Algorithm::soft_tree: return "soft-tree";
    case Algorithm::sort_tensor: return "sort-tensor";
    case Algorithm::sort_tree: return "sort-tree";
    case Algorithm::fast_soft_tree: return "fast-soft-tree";
    case Algorithm::brute_force: return "brute-force";
  }
  return "?";
}

inline std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept {
  for (Algorithm a : {Algorithm::soft_tensor, Algorithm::soft_tree, Algorithm::sort_tensor, Algorithm::sort_tree,
                      Algorithm::fast_soft_tree, Algorithm::brute_force}) {
    if (algorithm_name(a) == name) return a;
  }
  return std::nullopt;
}

inline SelectionResult select(Algorithm a, const Arrays& arrays, std::size_t k, double alpha = 1.1,
                              std::uint64_t guard = default_brute_force_guard) {
  switch (a) {
    case Algorithm::soft_tensor: return soft_tensor_select(arrays, k);
    case Algorithm::soft_tree: return soft_tree_select(arrays, k);
    case Algorithm::sort_tensor: return sort_tensor_select(arrays, k);
    case Algorithm::sort_tree: return sort_tree_select(arrays, k, true);
    case Algorithm::fast_soft_tree: return fast_soft_tree_select(arrays, k, alpha);
    case Algorithm::brute_force: return brute_force_select(arrays, k, guard);
  }
  throw contract_error("select: unknown algorithm");
}

}  // namespace cartesian_topk
