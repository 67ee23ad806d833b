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

/** \file soft_heap.hpp
 *  \brief Soft heap in the simplified binary-tree formulation.
 *
 *  The heap is a list of binary trees ordered by strictly increasing rank.
 *  Every node carries a list of items and a common key `ckey` that is an upper
 *  bound on the keys of those items. Insertion creates a rank-0 root and links
 *  equal-rank roots like a binary counter (amortized O(1)). `fill` moves the
 *  item list of the smaller child up into its parent; above rank T odd-ranked
 *  nodes fill twice, which is the only place item lists are merged and hence
 *  the only place keys are raised ("corrupted"). With T = ceil(log2(3/eps))
 *  the heap never holds more than eps * I corrupted items at once. Items that
 *  were corrupted and later extracted do not count against that bound; a heap
 *  drained entirely by extract_min eventually corrupts most of its items.
 *
 *  Items are reported as corrupted exactly once, through the out-parameter of
 *  the first `extract_min` after the corruption happened (or through
 *  `flush_corrupted`).
 */

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "cartesian_topk/score.hpp"

namespace cartesian_topk {

template <class Payload>
class SoftHeap {
 public:
  struct Entry {
    ScoreKey original_key;
    ScoreKey current_key;
    Payload payload;
    bool corrupted = false;
  };

  struct Extracted {
    Entry entry;
    std::vector<Entry> newly_corrupted;
  };

  explicit SoftHeap(double epsilon) : epsilon_(epsilon) {
    if (!(epsilon > 0.0 && epsilon < 0.5)) throw parameter_error("SoftHeap: epsilon must lie in (0, 1/2)");
    threshold_rank_ = static_cast<unsigned>(std::ceil(std::log2(3.0 / epsilon)));
  }

  [[nodiscard]] double epsilon() const noexcept { return epsilon_; }
  [[nodiscard]] std::size_t size() const noexcept { return size_; }
  [[nodiscard]] bool empty() const noexcept { return size_ == 0; }
  /// Insertions since construction or the last drain (the I of the bound).
  [[nodiscard]] std::uint64_t insert_count() const noexcept { return insert_count_; }
  /// Corrupted items currently in the heap; never exceeds eps * insert_count().
  [[nodiscard]] std::uint64_t live_corrupted_count() const noexcept { return live_corrupted_; }
  /// Corrupted items not yet handed out by extract_min or flush_corrupted.
  [[nodiscard]] std::size_t pending_corrupted_count() const noexcept { return pending_.size(); }
  /// Items ever corrupted since construction or the last drain.
  [[nodiscard]] std::uint64_t corrupted_count() const noexcept { return corrupted_log_.size(); }
  /// Every corruption event since construction or the last drain, in order.
  [[nodiscard]] const std::vector<Entry>& corrupted_log() const noexcept { return corrupted_log_; }

  void insert(ScoreKey key, Payload payload) {
    Index item = alloc_item(key, std::move(payload));
    Index x = alloc_node();
    Node& n = nodes_[x];
    n.ckey = key;
    n.rank = 0;
    push_back(n.clean, item);

    while (first_root_ != npos && nodes_[first_root_].rank == nodes_[x].rank) {
      Index y = first_root_;
      first_root_ = nodes_[y].next;
      x = link(x, y);
    }
    nodes_[x].next = first_root_;
    first_root_ = x;
    update_suffix_min(x);
    ++size_;
    ++insert_count_;
  }

  /** \brief Removes an item whose current key is minimal.
   *
   *  Items corrupted since the previous report are appended to
   *  `newly_corrupted`. The returned entry is flagged corrupted when its key
   *  was raised earlier, in which case it was already reported then.
   */
  Entry extract_min(std::vector<Entry>& newly_corrupted) {
    detail::require(size_ > 0, "SoftHeap::extract_min on an empty heap");
    Index h = nodes_[first_root_].suffix_min;
    Node& hn = nodes_[h];
    Index item = !is_empty(hn.dirty) ? pop_front(hn.dirty) : pop_front(hn.clean);
    Entry out{items_[item].key, hn.ckey, items_[item].payload, items_[item].corrupted};
    if (out.corrupted) --live_corrupted_;
    free_item(item);
    --size_;

    if (set_empty(nodes_[h])) {
      if (nodes_[h].left == npos) {
        remove_root(h);
      } else {
        defill(h);
        refresh_prefix(h);
      }
    }
    flush_corrupted(newly_corrupted);
    return out;
  }

  Extracted extract_min() {
    Extracted e;
    e.entry = extract_min(e.newly_corrupted);
    return e;
  }

  /// Moves not-yet-reported corruption events into `out`.
  void flush_corrupted(std::vector<Entry>& out) {
    out.insert(out.end(), pending_.begin(), pending_.end());
    pending_.clear();
  }

  /** \brief Empties the heap, returning every live entry.
   *
   *  Resets I and the corruption counters so a rebuilt heap's corruption is
   *  relative to its own insertions.
   */
  std::vector<Entry> drain() {
    std::vector<Entry> out;
    out.reserve(size_);
    std::vector<Index> stack;
    for (Index r = first_root_; r != npos; r = nodes_[r].next) stack.push_back(r);
    while (!stack.empty()) {
      Index x = stack.back();
      stack.pop_back();
      const Node& n = nodes_[x];
      for (const List* l : {&n.dirty, &n.clean}) {
        for (Index i = l->head; i != npos; i = items_[i].next) {
          out.push_back(Entry{items_[i].key, n.ckey, items_[i].payload, items_[i].corrupted});
        }
      }
      if (n.left != npos) stack.push_back(n.left);
      if (n.right != npos) stack.push_back(n.right);
    }
    items_.clear();
    free_items_.clear();
    nodes_.clear();
    free_nodes_.clear();
    pending_.clear();
    corrupted_log_.clear();
    first_root_ = npos;
    size_ = 0;
    insert_count_ = 0;
    live_corrupted_ = 0;
    return out;
  }

 private:
  using Index = std::uint32_t;
  static constexpr Index npos = std::numeric_limits<Index>::max();

  struct Item {
    ScoreKey key;
    Payload payload{};
    Index next = npos;
    bool corrupted = false;
  };

  struct List {
    Index head = npos;
    Index tail = npos;
  };

  struct Node {
    ScoreKey ckey;
    Index left = npos;
    Index right = npos;
    Index next = npos;        // root list
    Index suffix_min = npos;  // root list: min-ckey root among this and later roots
    unsigned rank = 0;
    List clean;  // items whose key equals ckey
    List dirty;  // corrupted items
  };

  static bool is_empty(const List& l) noexcept { return l.head == npos; }
  static bool set_empty(const Node& n) noexcept { return is_empty(n.clean) && is_empty(n.dirty); }

  void push_back(List& l, Index i) {
    items_[i].next = npos;
    if (l.head == npos) {
      l.head = l.tail = i;
    } else {
      items_[l.tail].next = i;
      l.tail = i;
    }
  }

  Index pop_front(List& l) {
    Index i = l.head;
    l.head = items_[i].next;
    if (l.head == npos) l.tail = npos;
    return i;
  }

  void append(List& dst, List& src) {
    if (src.head == npos) return;
    if (dst.head == npos) {
      dst = src;
    } else {
      items_[dst.tail].next = src.head;
      dst.tail = src.tail;
    }
    src = List{};
  }

  Index alloc_item(ScoreKey key, Payload payload) {
    Index i;
    if (!free_items_.empty()) {
      i = free_items_.back();
      free_items_.pop_back();
      items_[i] = Item{key, std::move(payload)};
    } else {
      i = static_cast<Index>(items_.size());
      items_.push_back(Item{key, std::move(payload)});
    }
    return i;
  }

  void free_item(Index i) { free_items_.push_back(i); }

  Index alloc_node() {
    if (!free_nodes_.empty()) {
      Index x = free_nodes_.back();
      free_nodes_.pop_back();
      nodes_[x] = Node{};
      return x;
    }
    nodes_.emplace_back();
    return static_cast<Index>(nodes_.size() - 1);
  }

  void free_node(Index x) { free_nodes_.push_back(x); }

  Index link(Index x, Index y) {
    Index z = alloc_node();
    Node& n = nodes_[z];
    n.rank = nodes_[x].rank + 1;
    n.left = x;
    n.right = y;
    defill(z);
    return z;
  }

  void defill(Index x) {
    fill(x);
    const Node& n = nodes_[x];
    if (n.rank > threshold_rank_ && (n.rank & 1u) && n.left != npos) fill(x);
  }

  void fill(Index x) {
    Node& n = nodes_[x];
    if (n.right != npos && nodes_[n.right].ckey < nodes_[n.left].ckey) std::swap(n.left, n.right);
    Index l = n.left;
    ScoreKey raised = nodes_[l].ckey;
    if (!is_empty(n.clean) && n.ckey < raised) {
      corrupt_all(n.clean, raised);
      append(n.dirty, n.clean);
    }
    n.ckey = raised;
    append(n.clean, nodes_[l].clean);
    append(n.dirty, nodes_[l].dirty);
    if (nodes_[l].left == npos) {
      free_node(l);
      n.left = n.right;
      n.right = npos;
    } else {
      defill(l);
    }
  }

  // Raising the common key corrupts every item that still matched the old one.
  void corrupt_all(const List& l, ScoreKey raised) {
    for (Index i = l.head; i != npos; i = items_[i].next) {
      items_[i].corrupted = true;
      ++live_corrupted_;
      Entry e{items_[i].key, raised, items_[i].payload, true};
      pending_.push_back(e);
      corrupted_log_.push_back(e);
    }
  }

  void update_suffix_min(Index x) {
    Node& n = nodes_[x];
    if (n.next == npos) {
      n.suffix_min = x;
    } else {
      Index s = nodes_[n.next].suffix_min;
      n.suffix_min = nodes_[s].ckey < n.ckey ? s : x;
    }
  }

  // Recomputes suffix minima for every root up to and including `upto`.
  void refresh_prefix(Index upto) {
    prefix_.clear();
    for (Index r = first_root_;; r = nodes_[r].next) {
      prefix_.push_back(r);
      if (r == upto) break;
    }
    for (auto it = prefix_.rbegin(); it != prefix_.rend(); ++it) update_suffix_min(*it);
  }

  void remove_root(Index h) {
    Index prev = npos;
    for (Index r = first_root_; r != h; r = nodes_[r].next) prev = r;
    if (prev == npos) {
      first_root_ = nodes_[h].next;
    } else {
      nodes_[prev].next = nodes_[h].next;
      refresh_prefix(prev);
    }
    free_node(h);
  }

  double epsilon_;
  unsigned threshold_rank_ = 0;
  std::vector<Item> items_;
  std::vector<Index> free_items_;
  std::vector<Node> nodes_;
  std::vector<Index> free_nodes_;
  std::vector<Index> prefix_;
  std::vector<Entry> pending_;
  std::vector<Entry> corrupted_log_;
  Index first_root_ = npos;
  std::size_t size_ = 0;
  std::uint64_t insert_count_ = 0;
  std::uint64_t live_corrupted_ = 0;
};

}  // namespace cartesian_topk
