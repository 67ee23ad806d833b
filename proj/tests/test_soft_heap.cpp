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

#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "support.hpp"

using namespace testing_support;
using ct::Multiset;
using ct::ScoreKey;
using Heap = ct::SoftHeap<int>;
using Entry = Heap::Entry;

TEST(SoftHeap, Construction) {
  Heap h(0.25);
  EXPECT_EQ(h.size(), 0u);
  EXPECT_TRUE(h.empty());
  EXPECT_EQ(h.insert_count(), 0u);
  EXPECT_NO_THROW(Heap(1.0 / 12.0));
  EXPECT_THROW(Heap(0.5), ct::parameter_error);
  EXPECT_THROW(Heap(0.0), ct::parameter_error);
  EXPECT_THROW(Heap(-0.1), ct::parameter_error);
}

TEST(SoftHeap, SingleInsertExtract) {
  Heap h(0.25);
  h.insert(ScoreKey(5), 42);
  auto [e, corrupted] = h.extract_min();
  EXPECT_EQ(e.original_key, ScoreKey(5));
  EXPECT_EQ(e.current_key, ScoreKey(5));
  EXPECT_EQ(e.payload, 42);
  EXPECT_FALSE(e.corrupted);
  EXPECT_TRUE(corrupted.empty());
  EXPECT_TRUE(h.empty());
}

TEST(SoftHeap, ExtractFromEmptyThrows) {
  Heap h(0.25);
  EXPECT_THROW(h.extract_min(), ct::contract_error);
}

TEST(SoftHeap, SmallHeapIsExact) {
  Heap h(0.01);
  for (int k : {3, 1, 2}) h.insert(ScoreKey(k), k);
  for (int expect : {1, 2, 3}) {
    auto [e, corrupted] = h.extract_min();
    EXPECT_EQ(e.original_key, ScoreKey(expect));
    EXPECT_FALSE(e.corrupted);
    EXPECT_TRUE(corrupted.empty());
  }
}

TEST(SoftHeap, KeysOnlyRaisedAndNothingLost) {
  for (int order = 0; order < 3; ++order) {
    std::vector<int> keys(2000);
    for (int i = 0; i < 2000; ++i) keys[i] = i;
    if (order == 1) std::reverse(keys.begin(), keys.end());
    if (order == 2) std::shuffle(keys.begin(), keys.end(), std::mt19937_64(1));
    Heap h(0.1);
    for (int k : keys) h.insert(ScoreKey(k), k);
    std::vector<Entry> reported;
    std::multiset<int> seen;
    while (!h.empty()) {
      Entry e = h.extract_min(reported);
      ASSERT_GE(e.current_key, e.original_key);
      ASSERT_EQ(e.corrupted, e.current_key > e.original_key);
      ASSERT_EQ(e.original_key, ScoreKey(e.payload));
      seen.insert(e.payload);
    }
    EXPECT_EQ(seen.size(), keys.size());
    EXPECT_EQ(std::set<int>(seen.begin(), seen.end()).size(), keys.size());
    for (const Entry& c : reported) EXPECT_GT(c.current_key, c.original_key);
  }
}

TEST(SoftHeap, LiveCorruptionWithinBoundOnFullDrain) {
  // Every item of a fully drained heap is eventually merged, so the number of
  // items *ever* corrupted exceeds eps*I; the bound holds for corrupted items
  // present in the heap.
  Heap h(0.25);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10000; ++i) h.insert(ScoreKey(double(rng() % 100000)), i);
  std::vector<Entry> c;
  while (!h.empty()) {
    h.extract_min(c);
    ASSERT_LE(h.live_corrupted_count(), 2500u);
  }
  EXPECT_GT(h.corrupted_count(), 0u);
  EXPECT_EQ(h.corrupted_count(), c.size());
}

TEST(SoftHeap, CorruptionReportedOnceAndMatchesLog) {
  Heap h(0.05);
  std::mt19937_64 rng(4);
  std::vector<Entry> reported;
  for (int step = 0; step < 20000; ++step) {
    if (h.empty() || rng() % 3) {
      h.insert(ScoreKey(double(rng() % 1000)), step);
    } else {
      h.extract_min(reported);
    }
  }
  h.flush_corrupted(reported);
  std::set<int> ids;
  for (const Entry& e : reported) EXPECT_TRUE(ids.insert(e.payload).second) << "duplicate report " << e.payload;
  EXPECT_EQ(reported.size(), h.corrupted_log().size());
}

TEST(SoftHeap, AdversarialInterleavingsRespectBound) {
  std::mt19937_64 rng(5);
  for (double eps : {0.01, 0.1, 0.25, 0.4}) {
    Heap h(eps);
    int next = 100000;
    for (int step = 0; step < 100000; ++step) {
      int phase = (step / 5000) % 4;
      bool insert = h.empty() || (phase == 0 ? true : phase == 1 ? rng() % 4 != 0 : phase == 2 ? rng() % 2 : rng() % 4 == 0);
      if (insert) {
        h.insert(ScoreKey(double(phase == 0 ? next-- : int(rng() % 100000))), step);
      } else {
        h.extract_min();
      }
      ASSERT_LE(double(h.live_corrupted_count()), eps * double(h.insert_count())) << "eps=" << eps << " step=" << step;
    }
  }
}

TEST(SoftHeap, DrainEmpty) {
  Heap h(0.25);
  EXPECT_TRUE(h.drain().empty());
}

TEST(SoftHeap, DrainReturnsOriginalKeys) {
  Heap h(0.25);
  h.insert(ScoreKey(4), 0);
  h.insert(ScoreKey(1), 1);
  auto d = h.drain();
  std::vector<ScoreKey> orig;
  for (auto& e : d) orig.push_back(e.original_key);
  EXPECT_EQ(Multiset(orig), (Multiset{1, 4}));
  EXPECT_TRUE(h.empty());
  EXPECT_EQ(h.insert_count(), 0u);
}

TEST(SoftHeap, DrainAfterExtractions) {
  std::mt19937_64 rng(6);
  for (int n : {1, 10, 1000}) {
    for (int j : {0, n / 2, n}) {
      Heap h(0.25);
      std::vector<ScoreKey> inserted, out;
      for (int i = 0; i < n; ++i) {
        inserted.emplace_back(double(rng() % 50));
        h.insert(inserted.back(), i);
      }
      for (int i = 0; i < j; ++i) out.push_back(h.extract_min().entry.original_key);
      auto d = h.drain();
      EXPECT_EQ(d.size(), std::size_t(n - j));
      for (auto& e : d) out.push_back(e.original_key);
      EXPECT_EQ(Multiset(out), Multiset(inserted));
      h.insert(ScoreKey(1), 0);
      EXPECT_EQ(h.insert_count(), 1u);
    }
  }
}

TEST(SoftHeap, SortedWhenInsertsBelowInverseEps) {
  std::mt19937_64 rng(7);
  for (double eps : {0.01, 0.1, 0.25, 0.4}) {
    int limit = static_cast<int>(std::ceil(1.0 / eps)) - 1;
    for (int it = 0; it < 50; ++it) {
      Heap h(eps);
      int n = 1 + int(rng() % limit);
      for (int i = 0; i < n; ++i) h.insert(ScoreKey(double(rng() % 20)), i);
      ScoreKey prev(-1);
      while (!h.empty()) {
        auto [e, c] = h.extract_min();
        ASSERT_FALSE(e.corrupted);
        ASSERT_TRUE(c.empty());
        ASSERT_LE(prev, e.original_key);
        prev = e.original_key;
      }
    }
  }
}
