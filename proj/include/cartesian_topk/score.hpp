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

/** \file score.hpp
 *  \brief Score keys, value multisets and the library's error types.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cartesian_topk {

/// A caller broke a documented precondition (k out of range, empty heap, ...).
class contract_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A tuning parameter (epsilon, alpha) lies outside its admissible range.
class parameter_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Brute-force enumeration refused because the tensor exceeds the guard.
class guard_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {
inline void require(bool ok, const char* what) {
  if (!ok) throw contract_error(what);
}
}  // namespace detail

/** \brief A real-valued score that is never NaN.
 *
 *  NaN is rejected at construction so that `<=>` is a total order everywhere
 *  else in the library. Infinite values are representable; input ingestion
 *  rejects them separately.
 */
class ScoreKey {
 public:
  constexpr ScoreKey() noexcept = default;

  explicit ScoreKey(double v) : value_(v) {
    if (std::isnan(v)) throw parameter_error("ScoreKey: NaN is not a valid score");
  }

  [[nodiscard]] constexpr double value() const noexcept { return value_; }

  friend constexpr bool operator==(ScoreKey a, ScoreKey b) noexcept { return a.value_ == b.value_; }
  friend constexpr std::strong_ordering operator<=>(ScoreKey a, ScoreKey b) noexcept {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (b.value_ < a.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  // Sums of non-NaN finite keys cannot produce NaN.
  friend ScoreKey operator+(ScoreKey a, ScoreKey b) noexcept { return unchecked(a.value_ + b.value_); }
  friend ScoreKey operator-(ScoreKey a, ScoreKey b) noexcept { return unchecked(a.value_ - b.value_); }
  ScoreKey& operator+=(ScoreKey o) noexcept {
    value_ += o.value_;
    return *this;
  }

  friend std::ostream& operator<<(std::ostream& os, ScoreKey k) { return os << k.value_; }

 private:
  static ScoreKey unchecked(double v) noexcept {
    ScoreKey k;
    k.value_ = v;
    return k;
  }

  double value_ = 0.0;
};

inline std::vector<ScoreKey> to_keys(std::span<const double> values) {
  std::vector<ScoreKey> out;
  out.reserve(values.size());
  for (double v : values) out.emplace_back(v);
  return out;
}

inline std::vector<ScoreKey> to_keys(std::initializer_list<double> values) {
  return to_keys(std::span<const double>(values.begin(), values.size()));
}

/** \brief Order-insensitive, multiplicity-sensitive collection of scores.
 *
 *  Stored sorted so equality is a plain element-wise comparison.
 */
class Multiset {
 public:
  Multiset() = default;
  explicit Multiset(std::vector<ScoreKey> items) : items_(std::move(items)) {
    std::sort(items_.begin(), items_.end());
  }
  Multiset(std::initializer_list<double> values) : Multiset(to_keys(values)) {}

  [[nodiscard]] std::size_t size() const noexcept { return items_.size(); }
  [[nodiscard]] bool empty() const noexcept { return items_.empty(); }
  [[nodiscard]] const std::vector<ScoreKey>& sorted() const noexcept { return items_; }

  friend bool operator==(const Multiset&, const Multiset&) = default;

  /// Element-wise comparison of the sorted sequences with a relative tolerance.
  [[nodiscard]] bool approx_equal(const Multiset& other, double rel_tol) const {
    if (items_.size() != other.items_.size()) return false;
    for (std::size_t i = 0; i < items_.size(); ++i) {
      double a = items_[i].value();
      double b = other.items_[i].value();
      double scale = std::max({1.0, std::abs(a), std::abs(b)});
      if (std::abs(a - b) > rel_tol * scale) return false;
    }
    return true;
  }

  friend std::ostream& operator<<(std::ostream& os, const Multiset& m) {
    os << '{';
    for (std::size_t i = 0; i < m.items_.size(); ++i) os << (i ? "," : "") << m.items_[i];
    return os << '}';
  }

 private:
  std::vector<ScoreKey> items_;
};

}  // namespace cartesian_topk
