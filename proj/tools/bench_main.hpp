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

/** \file bench_main.hpp
 *  \brief Command-line front end of the benchmark harness.
 *
 *  Exit codes: 0 success, 1 usage or guard refusal, 2 unreadable or malformed
 *  input, 3 validation failure.
 */

#pragma once

#include <cerrno>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cartesian_topk/bench.hpp"

namespace cartesian_topk::cli {

enum ExitCode { ok = 0, usage = 1, parse = 2, validation = 3 };

/// `fault` is a test hook forwarded to BenchConfig::fault_injection.
inline int bench_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
                      std::function<void(Algorithm, SelectionResult&)> fault = {}) {
  CLI::App app{"k-selection on Cartesian sums X1 + ... + Xm: benchmark harness"};
  app.name("cartesian_topk_bench");

  std::string algorithm = "all";
  std::string distribution = "uniform";
  BenchConfig config;
  config.fault_injection = std::move(fault);
  std::string output;
  bool stats = false;
  app.add_option("--algorithm", algorithm, "Selector to run")
      ->check(CLI::IsMember({"soft-tensor", "soft-tree", "sort-tensor", "sort-tree", "fast-soft-tree",
                             "brute-force", "all"}))
      ->capture_default_str();
  app.add_option("--m", config.m, "Number of arrays")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--n", config.n, "Values per array")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--k", config.k, "Number of values to select")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--alpha", config.alpha, "LOH rank for fast-soft-tree, in (1, 2)")->capture_default_str();
  auto* dist_opt = app.add_option("--distribution", distribution, "Input distribution")
                       ->check(CLI::IsMember({"uniform", "exponential", "exponential-int", "file"}))
                       ->capture_default_str();
  app.add_option("--input-file", config.input_file, "One array per line, values separated by commas or spaces");
  app.add_option("--seed", config.seed, "Seed of replicate 0; replicate r uses seed + r")->capture_default_str();
  app.add_option("--replicates", config.replicates, "Runs per algorithm")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_flag("--validate", config.validate, "Compare every result with the brute-force oracle");
  app.add_flag("--stats", stats, "Print mean pops per tree level to stderr");
  app.add_option("--output", output, "CSV destination (default: stdout)");

  auto* gnuplot = app.add_subcommand("gnuplot", "Print a gnuplot script for a CSV written by this tool");
  std::string csv_path = "results.csv";
  std::size_t levels = 7;
  gnuplot->add_option("--csv", csv_path, "CSV file to plot")->capture_default_str();
  gnuplot->add_option("--levels", levels, "Number of pops_level columns")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? ok : usage;
  }

  if (gnuplot->parsed()) {
    out << gnuplot_script(csv_path, levels);
    return ok;
  }

  if (const char* env = std::getenv("CARTESIAN_TOPK_GUARD")) {
    char* end = nullptr;
    errno = 0;
    unsigned long long g = std::strtoull(env, &end, 10);
    if (errno != 0 || end == env || *end != '\0' || g == 0) {
      err << "error: CARTESIAN_TOPK_GUARD must be a positive integer\n";
      return usage;
    }
    config.guard = g;
  }

  if (!config.input_file.empty() && dist_opt->count() == 0) distribution = "file";
  if (distribution == "uniform") config.distribution = Distribution::uniform;
  if (distribution == "exponential") config.distribution = Distribution::exponential;
  if (distribution == "exponential-int") config.distribution = Distribution::exponential_int;
  if (distribution == "file") {
    config.distribution = Distribution::file;
    if (config.input_file.empty()) {
      err << "error: --distribution file requires --input-file\n";
      return usage;
    }
  }

  bool all = algorithm == "all";
  if (all) {
    config.algorithms.assign(std::begin(all_selectors), std::end(all_selectors));
  } else {
    config.algorithms = {*parse_algorithm(algorithm)};
  }
  bool uses_alpha = all || algorithm == "fast-soft-tree";
  if (uses_alpha && !(config.alpha > 1.0 && config.alpha < 2.0)) {
    err << "error: --alpha must lie in (1, 2)\n";
    return usage;
  }

  try {
    Arrays probe;
    if (config.distribution == Distribution::file) probe = ingest_file(config.input_file);
    std::uint64_t cells = config.distribution == Distribution::file
                              ? detail::tensor_cells(probe)
                              : detail::tensor_cells(Arrays(config.m, std::vector<ScoreKey>(config.n)));
    if (config.k > cells) {
      err << "error: --k must not exceed the number of tensor cells (" << cells << ")\n";
      return usage;
    }
    if (all && cells <= config.guard) config.algorithms.push_back(Algorithm::brute_force);

    BenchReport report = run(config);
    if (output.empty()) {
      write_csv(out, report);
    } else {
      std::ofstream file(output);
      if (!file) {
        err << "error: cannot write '" << output << "'\n";
        return usage;
      }
      write_csv(file, report);
    }
    if (stats) {
      for (const auto& [a, means] : mean_pops_per_level(report)) {
        err << std::setw(15) << std::left << algorithm_name(a);
        for (double v : means) err << ' ' << std::setw(10) << std::right << std::setprecision(6) << v;
        err << '\n';
      }
    }
    if (report.validation_failed) {
      err << "error: a selector disagreed with the brute-force oracle\n";
      return validation;
    }
  } catch (const parse_error& e) {
    err << "error: " << e.what() << '\n';
    return parse;
  } catch (const guard_error& e) {
    err << "error: " << e.what() << " (raise it with CARTESIAN_TOPK_GUARD)\n";
    return usage;
  } catch (const contract_error& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const parameter_error& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return parse;
  }
  return ok;
}

}  // namespace cartesian_topk::cli
