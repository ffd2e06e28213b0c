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

#ifndef FAIRDIV_TESTS_TEST_UTIL_HPP_
#define FAIRDIV_TESTS_TEST_UTIL_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "fairdiv/bench.hpp"
#include "fairdiv/core.hpp"

namespace fairdiv::testing {

// 1-D points with one label each; ids default to "0".."n-1".
inline Dataset line(const std::vector<double>& xs, const std::vector<std::string>& groups,
                    std::vector<std::string> ids = {}) {
  std::vector<std::vector<double>> rows;
  std::vector<std::vector<std::string>> labels;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    rows.push_back({xs[i]});
    labels.push_back({groups[i]});
  }
  return Dataset::from_rows(rows, labels, MetricKind::kEuclidean, std::move(ids));
}

// 1-D points with label sets.
inline Dataset line_multi(const std::vector<double>& xs, const std::vector<std::vector<std::string>>& labels) {
  std::vector<std::vector<double>> rows;
  for (double x : xs) rows.push_back({x});
  return Dataset::from_rows(rows, labels);
}

// Smallest seed whose first greedy pick over a universe of `size` is `index`.
inline std::uint64_t seed_for_first(std::size_t size, std::size_t index) {
  for (std::uint64_t s = 0;; ++s) {
    if (seeded_index(s, size) == index) return s;
  }
}

inline FairnessSpec spec_of(std::vector<int> counts, Mode mode = Mode::kDisjoint) {
  FairnessSpec s;
  s.counts = std::move(counts);
  s.mode = mode;
  return s;
}

// Plain min-pairwise-distance loop, independent of the library helper.
inline double naive_diversity(const Dataset& ds, const std::vector<ElementId>& set) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < set.size(); ++a) {
    for (std::size_t b = 0; b < set.size(); ++b) {
      if (a != b) best = std::min(best, ds.distance(set[a], set[b]));
    }
  }
  return best;
}

inline double naive_radius(const Dataset& ds, const std::vector<ElementId>& centers) {
  double r = 0.0;
  for (ElementId u = 0; u < ds.size(); ++u) {
    double nearest = std::numeric_limits<double>::infinity();
    for (ElementId c : centers) nearest = std::min(nearest, ds.distance(u, c));
    r = std::max(r, nearest);
  }
  return r;
}

// Full subset scan by bitmask, no pruning; n <= 20.
inline double bitmask_opt(const Dataset& ds, const FairnessSpec& spec) {
  const std::size_t n = ds.size();
  double best = -1.0;
  for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
    std::vector<ElementId> set;
    for (ElementId u = 0; u < n; ++u) {
      if ((mask >> u) & 1U) set.push_back(u);
    }
    const auto counts = group_counts(ds, set);
    bool ok = true;
    for (std::size_t g = 0; g < counts.size(); ++g) {
      ok = ok && (spec.mode == Mode::kDisjoint ? counts[g] == spec.counts[g] : counts[g] >= spec.counts[g]);
    }
    if (spec.mode == Mode::kDisjoint) ok = ok && static_cast<int>(set.size()) == spec.total();
    if (spec.mode == Mode::kOverlapping) ok = ok && static_cast<int>(set.size()) <= spec.total();
    if (ok) best = std::max(best, naive_diversity(ds, set));
  }
  return best;
}

inline Dataset random_instance(std::uint64_t seed, std::size_t n, std::size_t m, double overlap = 0.0) {
  InstanceParams p;
  p.n = n;
  p.m = m;
  p.overlap = overlap;
  p.seed = seed;
  return generate_instance(p);
}

}  // namespace fairdiv::testing

#endif  // FAIRDIV_TESTS_TEST_UTIL_HPP_
