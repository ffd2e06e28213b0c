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

#include "doctest.h"
#include "fairdiv/bench.hpp"
#include "fairdiv/io.hpp"
#include "fairdiv/oracle.hpp"
#include "fairdiv/solve.hpp"
#include "test_util.hpp"

using namespace fairdiv;
using namespace fairdiv::testing;

namespace {

struct Outcome {
  std::vector<ElementId> set;
  double value = 0.0;
  bool non_monotone = false;
};

Outcome run(Algorithm a, const Dataset& ds, const FairnessSpec& spec, const SolveOptions& options) {
  const SolveResult r = solve(a, ds, spec, options);
  if (const auto* s = std::get_if<Selection>(&r)) return {s->chosen, s->diversity, s->diagnostics.non_monotone};
  const auto& c = std::get<ClusterResult>(r);
  return {c.centers, c.radius, c.diagnostics.non_monotone};
}

bool feasible(const Dataset& ds, const FairnessSpec& spec, const std::vector<ElementId>& set) {
  const auto counts = group_counts(ds, set);
  for (std::size_t g = 0; g < counts.size(); ++g) {
    if (spec.mode == Mode::kDisjoint ? counts[g] != spec.counts[g] : counts[g] < spec.counts[g]) return false;
  }
  std::vector<ElementId> sorted = set;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  return spec.mode == Mode::kDisjoint ? static_cast<int>(set.size()) == spec.total()
                                      : static_cast<int>(set.size()) <= spec.total();
}

// Algorithms applicable to an instance with m groups and the given overlap.
std::vector<Algorithm> applicable(std::size_t m, bool overlapping) {
  std::vector<Algorithm> out;
  if (overlapping) {
    if (m == 2) out.push_back(Algorithm::kFairSwapOverlap);
    out.push_back(Algorithm::kFairFlowOverlap);
    return out;
  }
  if (m == 2) out.push_back(Algorithm::kFairSwap);
  out.push_back(Algorithm::kFairGmm);
  out.push_back(Algorithm::kFairFlow);
  out.push_back(Algorithm::kFairFlowOverlap);
  out.push_back(Algorithm::kFairKCenter);
  if (m == 2) out.push_back(Algorithm::kFairSwapOverlap);
  return out;
}

}  // namespace

TEST_CASE("properties: every solver is feasible and within its bound") {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const std::size_t m = 1 + seed % 4;
    const bool overlapping = m >= 2 && seed % 3 == 0;
    const std::size_t n = 6 + seed % 8;
    const Dataset ds = random_instance(instance_seed(77, seed), n, m, overlapping ? 0.35 : 0.0);
    for (Algorithm a : applicable(m, ds.mode() == Mode::kOverlapping)) {
      FairnessSpec spec = random_counts(ds, constraint_mode(a), 1, 3, seed);
      for (auto search : {GuessSearch::discrete(), GuessSearch::continuous(0.2)}) {
        CAPTURE(seed);
        CAPTURE(algorithm_name(a));
        const Outcome got = run(a, ds, spec, {search, seed});
        CHECK(feasible(ds, spec, got.set));
        const double opt = is_clustering(a) ? oracle_fair_kcenter(ds, spec).opt_value
                                            : oracle_fair_maxmin(ds, spec).opt_value;
        const double bound = approximation_bound(a, m, search);
        CHECK(ratio_within(a, got.value, opt, bound));
        CHECK_FALSE(got.non_monotone);
        if (is_clustering(a)) {
          CHECK(got.value == naive_radius(ds, got.set));
        } else if (got.set.size() >= 2) {
          CHECK(got.value == naive_diversity(ds, got.set));
        }
        ++checked;
      }
    }
  }
  CHECK(checked > 400);
}

TEST_CASE("properties: oracle agrees with a plain subset scan") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Dataset ds = random_instance(seed, 5 + seed % 8, 2 + seed % 2, seed % 2 ? 0.3 : 0.0);
    const FairnessSpec spec = random_counts(ds, ds.mode(), 1, 2, seed);
    CHECK(oracle_fair_maxmin(ds, spec).opt_value == bitmask_opt(ds, spec));
  }
}

TEST_CASE("properties: runs are deterministic") {
  const Dataset ds = random_instance(3, 400, 3);
  const FairnessSpec spec = random_counts(ds, Mode::kDisjoint, 2, 5, 3);
  for (Algorithm a : {Algorithm::kFairFlow, Algorithm::kFairGmm, Algorithm::kFairKCenter,
                      Algorithm::kFairFlowOverlap}) {
    const SolveOptions options{GuessSearch::discrete(), 9};
    const SolveResult first = solve(a, ds, spec, options);
    const SolveResult second = solve(a, ds, spec, options);
    const RecordOptions rec{false, 0.0};
    auto dump = [&](const SolveResult& r) {
      if (const auto* s = std::get_if<Selection>(&r)) return selection_record(ds, *s, rec).dump();
      return cluster_record(ds, std::get<ClusterResult>(r), rec).dump();
    };
    CHECK(dump(first) == dump(second));
  }
}

TEST_CASE("properties: removing a point never lowers diversity") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Dataset ds = random_instance(seed, 30, 2);
    const Selection s = gmm_selection(ds, 8, seed);
    for (std::size_t drop = 0; drop < s.chosen.size(); ++drop) {
      std::vector<ElementId> rest = s.chosen;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(drop));
      CHECK(diversity(ds, rest) >= s.diversity);
    }
  }
}

TEST_CASE("properties: generated instances") {
  InstanceParams p;
  p.n = 200;
  p.m = 5;
  p.dim = 3;
  p.layout = Layout::kClustered;
  p.overlap = 0.2;
  p.seed = 4;
  const Dataset ds = generate_instance(p);
  CHECK(ds.size() == 200);
  CHECK(ds.group_count() == 5);
  for (ElementId u = 0; u < 5; ++u) CHECK(ds.in_group(u, u));
  for (ElementId u = 0; u < ds.size(); ++u) {
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(ds.coordinate(u, j) >= 0.0);
      CHECK(ds.coordinate(u, j) <= 100.0);
    }
  }
  CHECK(same_dataset(ds, generate_instance(p)));
  CHECK(instance_seed(1, 2) != instance_seed(1, 3));
}

TEST_CASE("properties: ratio helpers") {
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(objective_ratio(inf, inf) == 1.0);
  CHECK(objective_ratio(0.0, 0.0) == 1.0);
  CHECK(objective_ratio(2.0, 4.0) == 0.5);
  CHECK(ratio_within(Algorithm::kFairSwap, 1.0, 4.0, 0.25));
  CHECK_FALSE(ratio_within(Algorithm::kFairSwap, 0.9, 4.0, 0.25));
  CHECK(ratio_within(Algorithm::kFairKCenter, 3.0, 1.0, 3.0));
  CHECK_FALSE(ratio_within(Algorithm::kFairKCenter, 3.1, 1.0, 3.0));
  CHECK(approximation_bound(Algorithm::kFairFlow, 3, GuessSearch::discrete()) == doctest::Approx(1.0 / 8.0));
  CHECK(approximation_bound(Algorithm::kFairFlowOverlap, 3, GuessSearch::discrete()) ==
        doctest::Approx(1.0 / 8.0));
  CHECK(approximation_bound(Algorithm::kFairGmm, 3, GuessSearch::discrete()) == 0.2);
  for (Algorithm a : all_algorithms()) CHECK(parse_algorithm(algorithm_name(a)) == a);
  CHECK_FALSE(parse_algorithm("nope").has_value());
}

TEST_CASE("properties: small ratio bench stays within bounds") {
  BenchConfig config;
  config.algorithms = {Algorithm::kFairSwap, Algorithm::kFairGmm, Algorithm::kFairFlow};
  config.instances = 30;
  config.seed = 5;
  const BenchReport report = run_ratio_bench(config);
  CHECK(report.records.size() == 90);
  REQUIRE(report.summaries.size() == 3);
  for (const auto& s : report.summaries) {
    CHECK(s.all_within);
    CHECK(s.errors == 0);
    CHECK(s.min_ratio >= s.bound);
  }
  const nlohmann::json j = bench_to_json(report, false);
  CHECK(j.dump() == bench_to_json(run_ratio_bench(config), false).dump());
}
