// Copyright 2026 The fairdiv Authors.
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

// Synthetic instances, approximation-ratio measurements against the oracle,
// and running-time scaling sweeps.

#ifndef FAIRDIV_BENCH_HPP_
#define FAIRDIV_BENCH_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "fairdiv/core.hpp"
#include "fairdiv/oracle.hpp"
#include "fairdiv/solve.hpp"
#include "json.hpp"

namespace fairdiv {

enum class Layout { kUniform, kClustered };

struct InstanceParams {
  std::size_t n = 10;
  std::size_t m = 2;
  std::size_t dim = 2;
  Layout layout = Layout::kUniform;
  std::size_t clusters = 4;  // clustered layout only
  double overlap = 0.0;      // chance of each extra label per element
  std::uint64_t seed = 0;
};

// Points in [0, 100]^dim. Element i < m is labelled with group i so every
// group is present; the rest get a uniformly random primary group plus each
// other group with probability `overlap`.
Dataset generate_instance(const InstanceParams& params);

// Independent seed for instance `index` of a suite.
std::uint64_t instance_seed(std::uint64_t suite_seed, std::uint64_t index);

// k_i uniform in [k_min, min(k_max, |U_i|)], with at least one positive
// count.
FairnessSpec random_counts(const Dataset& ds, Mode mode, int k_min, int k_max, std::uint64_t seed);

struct BenchConfig {
  std::vector<Algorithm> algorithms;
  int instances = 100;
  std::size_t n_min = 6;
  std::size_t n_max = 12;
  std::size_t m = 2;
  std::size_t dim = 2;
  int k_min = 1;
  int k_max = 3;
  double overlap = 0.0;
  Layout layout = Layout::kUniform;
  std::uint64_t seed = 0;
  SolveOptions solve;
  std::uint64_t oracle_budget = kDefaultOracleBudget;
};

struct BenchRecord {
  int index = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<int> counts;
  std::string algorithm;
  double achieved = 0.0;    // diversity or radius
  double oracle_opt = 0.0;
  double ratio = 0.0;       // achieved / opt; 1 when both are 0 or both infinite
  bool within_bound = false;
  int probes = 0;
  double wall_ms = 0.0;
  std::string error;        // set when the solver or oracle refused the instance
};

struct BenchSummary {
  std::string algorithm;
  int count = 0;
  int errors = 0;
  double bound = 0.0;
  double min_ratio = 0.0;
  double mean_ratio = 0.0;
  double max_ratio = 0.0;
  bool all_within = true;
};

struct BenchReport {
  std::vector<BenchRecord> records;
  std::vector<BenchSummary> summaries;
};

// Ratio of achieved to optimal objective with the degenerate cases above.
double objective_ratio(double achieved, double opt);

// Whether `ratio` respects `bound` (lower bound for max-min, upper bound for
// k-center), with absolute slack 1e-9.
bool ratio_within(Algorithm a, double achieved, double opt, double bound);

BenchReport run_ratio_bench(const BenchConfig& config);

struct ScalingConfig {
  std::vector<Algorithm> algorithms;
  std::vector<std::size_t> sizes{10'000, 100'000};
  std::size_t m = 3;
  int k = 20;
  int repetitions = 3;
  Layout layout = Layout::kUniform;
  std::uint64_t seed = 0;
};

struct ScalingRecord {
  std::string algorithm;
  std::size_t n = 0;
  std::size_t m = 0;
  int k = 0;
  double best_ms = 0.0;  // fastest of the repetitions
  std::uint64_t distance_evaluations = 0;
};

// Times each algorithm on one instance per size. Counts are split as evenly
// as possible over the groups (fair-swap always uses two groups).
std::vector<ScalingRecord> run_scaling_bench(const ScalingConfig& config);

nlohmann::json bench_to_json(const BenchReport& report, bool include_timing);
nlohmann::json scaling_to_json(const std::vector<ScalingRecord>& records);

}  // namespace fairdiv

#endif  // FAIRDIV_BENCH_HPP_
