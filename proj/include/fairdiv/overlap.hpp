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

// Solvers for overlapping groups, where the constraint is |S n U_i| >= k_i.

#ifndef FAIRDIV_OVERLAP_HPP_
#define FAIRDIV_OVERLAP_HPP_

#include <cstdint>
#include <functional>
#include <vector>

#include "fairdiv/core.hpp"
#include "fairdiv/search.hpp"

namespace fairdiv {

// Elements whose label set is exactly `labels`.
struct IntersectionClass {
  GroupMask labels = 0;
  std::vector<ElementId> members;  // increasing
};

// Non-empty classes ordered by decreasing label count, then lexicographically
// on the sorted group indices.
std::vector<IntersectionClass> partition_into_classes(const Dataset& ds);

// Orders label sets: larger sets first, equal sizes lexicographic.
bool label_set_before(GroupMask a, GroupMask b);

// C(m, floor(m/2)): the largest antichain of subsets of an m-set.
std::uint64_t sperner_bound(int m);

// Number of c_L guesses per gamma when every class is present:
// (k_max + 1)^(2^m - 1 - m), saturating.
std::uint64_t overlap_guess_bound(int m, int k_max);

// Selected-element counts per intersection class.
struct FlowGuess {
  std::vector<GroupMask> labels;  // aligned with counts
  std::vector<int> counts;

  int total() const;
  // sum over classes containing i of c_L >= k_i for every i.
  bool covers(const FairnessSpec& spec) const;
};

// Calls `visit` for every guess: c_L in 0..min(k_max, |X_L|) for each class
// with two or more labels (lexicographic, first class slowest), singletons set
// to max(0, k_i - sum of the others). Guesses needing more singleton elements
// than exist are skipped. Stops early when `visit` returns true.
void for_each_flow_guess(const std::vector<IntersectionClass>& classes, const FairnessSpec& spec,
                         const std::function<bool(const FlowGuess&)>& visit);

// Default cap on the number of pairwise-distance guesses materialized.
inline constexpr std::uint64_t kMaxPairwiseGuesses = 20'000'000;

// Two groups. Greedy bi-colored prefix at separation gamma/4, then the swap
// procedure on the single-colored points that are not too close to it.
// A probe result is flagged aborted if it lacks supply or falls below gamma/4.
Selection fair_swap_overlap_probe(const Dataset& ds, const FairnessSpec& spec, double gamma,
                                  std::uint64_t seed = 0);
// 1/4 guarantee with the discrete search over all pairwise distances.
Selection fair_swap_overlap(const Dataset& ds, const FairnessSpec& spec,
                            const GuessSearch& search = GuessSearch::discrete(),
                            std::uint64_t seed = 0);

inline constexpr int kDefaultMCap = 4;

struct OverlapFlowOptions {
  std::uint64_t seed = 0;
  int m_cap = kDefaultMCap;
};

// One gamma: builds Z_L per class, checks the component structure, then
// tries flow guesses in order until one routes sum c_L units.
Selection fair_flow_overlap_probe(const Dataset& ds, const FairnessSpec& spec, double gamma,
                                  const OverlapFlowOptions& options = {});
// 1/(3M-1) guarantee, M = sperner_bound(m). Refuses m > m_cap.
Selection fair_flow_overlap(const Dataset& ds, const FairnessSpec& spec,
                            const GuessSearch& search = GuessSearch::discrete(),
                            const OverlapFlowOptions& options = {});

}  // namespace fairdiv

#endif  // FAIRDIV_OVERLAP_HPP_
