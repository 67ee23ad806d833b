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

/** \file bench.hpp
 *  \brief Benchmark harness: input generation, file ingestion, runs and CSV.
 *
 *  Inputs are drawn from std::mt19937_64 seeded with splitmix64(seed). Every
 *  draw is rounded down to a multiple of 2^-32, which keeps sums of up to
 *  2^10 values exact in double precision regardless of summation order.
 *  Uniform draws are (x >> 32) * 2^-32 on [0, 1); exponential draws (rate 1)
 *  are -log1p(-u) for a 53-bit uniform u, then rounded to the same grid.
 *  `exponential_int` rounds the same draws down to integers, which produces
 *  heavy ties among small sums.
 */

#pragma once

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cartesian_topk/score.hpp"
#include "cartesian_topk/selectors.hpp"

namespace cartesian_topk {

enum class Distribution { uniform, exponential, exponential_int, file };

inline std::string_view distribution_name(Distribution d) noexcept {
  switch (d) {
    case Distribution::uniform: return "uniform";
    case Distribution::exponential: return "exponential";
    case Distribution::exponential_int: return "exponential-int";
    case Distribution::file: return "file";
  }
  return "?";
}

/// Malformed input file; line and column are 1-based.
class parse_error : public std::runtime_error {
 public:
  parse_error(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(what + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
        line_(line),
        column_(column) {}
  [[nodiscard]] std::size_t line() const noexcept { return line_; }
  [[nodiscard]] std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

inline Arrays generate_inputs(Distribution d, std::size_t m, std::size_t n, std::uint64_t seed) {
  detail::require(m >= 1 && n >= 1, "generate_inputs: m and n must be positive");
  detail::require(d != Distribution::file, "generate_inputs: file inputs are read with ingest_file");
  std::uint64_t state = seed;
  std::mt19937_64 rng(detail::splitmix64(state));
  constexpr double grid = 0x1p-32;
  Arrays out(m);
  for (auto& a : out) {
    a.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t x = rng();
      double v;
      if (d == Distribution::uniform) {
        v = static_cast<double>(x >> 32) * grid;
      } else {
        double u = static_cast<double>(x >> 11) * 0x1p-53;
        double e = -std::log1p(-u);
        v = d == Distribution::exponential ? std::floor(e / grid) * grid : std::floor(e);
      }
      a.emplace_back(v);
    }
  }
  return out;
}

/** \brief Parses one array per non-blank line; values separated by commas
 *  and/or whitespace. Arrays may differ in length.
 */
inline Arrays parse_arrays(std::string_view text) {
  Arrays out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    std::vector<ScoreKey> row;
    std::size_t i = 0;
    auto skip_space = [&] {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    };
    bool need_value = false;
    for (;;) {
      skip_space();
      if (i == line.size()) {
        if (need_value) throw parse_error("value expected after ','", line_no, i + 1);
        break;
      }
      std::size_t start = i;
      if (line[i] == '+') ++i;
      double v = 0;
      auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + line.size(), v);
      std::size_t end = static_cast<std::size_t>(ptr - line.data());
      bool delimited = end == line.size() || line[end] == ' ' || line[end] == '\t' || line[end] == ',';
      if (ec != std::errc{} || end == i || !delimited) {
        std::string token(line.substr(start, line.find_first_of(" \t,", start) - start));
        throw parse_error("invalid number '" + token + "'", line_no, start + 1);
      }
      if (!std::isfinite(v)) throw parse_error("non-finite value", line_no, start + 1);
      row.emplace_back(v);
      i = end;
      skip_space();
      need_value = i < line.size() && line[i] == ',';
      if (need_value) ++i;
    }
    if (!row.empty()) out.push_back(std::move(row));
  }
  if (out.empty()) throw parse_error("input contains no arrays", line_no == 0 ? 1 : line_no, 1);
  return out;
}

inline Arrays ingest_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open input file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_arrays(buf.str());
}

struct BenchConfig {
  std::vector<Algorithm> algorithms{Algorithm::sort_tree};
  std::size_t m = 4;
  std::size_t n = 4;
  std::size_t k = 10;
  double alpha = 1.1;
  Distribution distribution = Distribution::uniform;
  std::string input_file;
  std::uint64_t seed = 1;
  std::size_t replicates = 1;
  bool validate = false;
  std::uint64_t guard = default_brute_force_guard;
  /// Test hook: may tamper with a result before it is validated.
  std::function<void(Algorithm, SelectionResult&)> fault_injection;
};

enum class Validation { skipped, passed, failed };

inline std::string_view validation_name(Validation v) noexcept {
  switch (v) {
    case Validation::skipped: return "skipped";
    case Validation::passed: return "passed";
    case Validation::failed: return "failed";
  }
  return "?";
}

struct CsvRow {
  Algorithm algorithm = Algorithm::sort_tree;
  std::size_t replicate = 0;
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t k = 0;
  double alpha = 0;
  Distribution distribution = Distribution::uniform;
  std::uint64_t seed = 0;
  std::uint64_t wall_time_ns = 0;
  RunStats stats;
  Validation validation = Validation::skipped;
};

struct BenchReport {
  std::vector<CsvRow> rows;
  std::size_t levels = 1;  // number of per-level pops columns
  bool validation_failed = false;
};

/// Runs every requested algorithm on every replicate. Replicate r uses seed + r.
inline BenchReport run(const BenchConfig& config) {
  detail::require(config.replicates >= 1, "run: replicates must be positive");
  detail::require(config.k >= 1, "run: k must be positive");
  BenchReport report;
  for (std::size_t r = 0; r < config.replicates; ++r) {
    std::uint64_t seed = config.seed + r;
    bool from_file = config.distribution == Distribution::file;
    Arrays arrays = from_file ? ingest_file(config.input_file)
                              : generate_inputs(config.distribution, config.m, config.n, seed);
    std::uint64_t cells = detail::tensor_cells(arrays);
    std::size_t depth = 0;
    while ((std::size_t{1} << depth) < arrays.size()) ++depth;
    report.levels = std::max(report.levels, depth + 1);

    std::optional<Multiset> oracle;
    if (config.validate && cells <= config.guard) {
      oracle.emplace(brute_force_select(arrays, config.k, config.guard).values);
    }
    for (Algorithm a : config.algorithms) {
      auto t0 = std::chrono::steady_clock::now();
      SelectionResult res = select(a, arrays, config.k, config.alpha, config.guard);
      auto t1 = std::chrono::steady_clock::now();
      if (config.fault_injection) config.fault_injection(a, res);

      CsvRow row;
      row.algorithm = a;
      row.replicate = r;
      row.m = arrays.size();
      row.n = from_file ? arrays[0].size() : config.n;
      row.k = config.k;
      row.alpha = config.alpha;
      row.distribution = config.distribution;
      row.seed = seed;
      row.wall_time_ns = static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
      row.stats = std::move(res.stats);
      if (oracle) {
        Multiset got(res.values);
        bool ok = from_file ? got.approx_equal(*oracle, 1e-9) : got == *oracle;
        if (ok && res.sorted) ok = std::is_sorted(res.values.begin(), res.values.end());
        row.validation = ok ? Validation::passed : Validation::failed;
        report.validation_failed |= !ok;
      }
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

namespace detail {
inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
}  // namespace detail

/** \brief Writes the CSV: one header line, one row per (algorithm, replicate).
 *
 *  Columns: algorithm, replicate, m, n, k, alpha, distribution, seed,
 *  wall_time_ns, values_generated, corrupted_count, heap_insertions,
 *  fringe_peak, double_advances, validation, then pops_level_0 ..
 *  pops_level_{levels-1} (empty where an algorithm has no such level).
 */
inline void write_csv(std::ostream& os, const BenchReport& report) {
  os << "algorithm,replicate,m,n,k,alpha,distribution,seed,wall_time_ns,values_generated,corrupted_count,"
        "heap_insertions,fringe_peak,double_advances,validation";
  for (std::size_t d = 0; d < report.levels; ++d) os << ",pops_level_" << d;
  os << '\n';
  for (const CsvRow& r : report.rows) {
    os << algorithm_name(r.algorithm) << ',' << r.replicate << ',' << r.m << ',' << r.n << ',' << r.k << ','
       << detail::format_double(r.alpha) << ',' << distribution_name(r.distribution) << ',' << r.seed << ','
       << r.wall_time_ns << ',' << r.stats.values_generated << ',' << r.stats.corrupted_count << ','
       << r.stats.heap_insertions << ',' << r.stats.fringe_peak << ',' << r.stats.double_advances << ','
       << validation_name(r.validation);
    for (std::size_t d = 0; d < report.levels; ++d) {
      os << ',';
      if (auto it = r.stats.pops_per_level.find(d); it != r.stats.pops_per_level.end()) {
        os << detail::format_double(it->second);
      }
    }
    os << '\n';
  }
}

/// Mean pops per level for each algorithm, averaged over replicates.
inline std::vector<std::pair<Algorithm, std::vector<double>>> mean_pops_per_level(const BenchReport& report) {
  std::vector<std::pair<Algorithm, std::vector<double>>> out;
  std::vector<std::vector<std::size_t>> counts;
  for (const CsvRow& r : report.rows) {
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& e) { return e.first == r.algorithm; });
    if (it == out.end()) {
      out.emplace_back(r.algorithm, std::vector<double>(report.levels, 0.0));
      counts.emplace_back(report.levels, 0);
      it = out.end() - 1;
    }
    auto& count = counts[static_cast<std::size_t>(it - out.begin())];
    for (const auto& [d, v] : r.stats.pops_per_level) {
      it->second[d] += v;
      ++count[d];
    }
  }
  for (std::size_t a = 0; a < out.size(); ++a) {
    for (std::size_t d = 0; d < report.levels; ++d) {
      if (counts[a][d]) out[a].second[d] /= static_cast<double>(counts[a][d]);
    }
  }
  return out;
}

/// A gnuplot script plotting mean pops per level from a CSV written by write_csv.
inline std::string gnuplot_script(const std::string& csv_path, std::size_t levels) {
  std::ostringstream s;
  s << "set datafile separator ','\n"
    << "set key autotitle columnhead\n"
    << "set xlabel 'tree depth'\n"
    << "set ylabel 'mean pops per node'\n"
    << "set logscale y 2\n"
    << "set xtics 1\n"
    << "plot for [d=0:" << (levels == 0 ? 0 : levels - 1) << "] '" << csv_path
    << "' using (d):(column(16 + d)) with points pt 7 title sprintf('depth %d', d)\n";
  return s.str();
}

}  // namespace cartesian_topk
