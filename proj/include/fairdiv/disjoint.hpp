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

// Solvers for disjoint groups: swap-based balancing (two groups) and
// per-group greedy followed by exhaustive search (small k).

#ifndef FAIRDIV_DISJOINT_HPP_
#define FAIRDIV_DISJOINT_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "fairdiv/core.hpp"

namespace fairdiv {

// What the balancing phase did.
struct SwapTrace {
  std::vector<ElementId> color_blind;  // unconstrained greedy picks, in order
  std::size_t under = 0;               // group that was short
  std::size_t over = 0;
  std::vector<ElementId> extras;       // added to the short group, in pick order
  std::vector<ElementId> removed;      // removed from the long group, one per extra
};

struct SwapResult {
  Selection selection;
  SwapTrace trace;
};

// Two-group fair selection with a 1/4 guarantee, O(kn).
//
// Picks k = k1 + k2 points color-blind with GMM, then tops the short group up
// with GMM seeded by its current picks. For each extra, in pick order, the
// nearest remaining point of the long group is dropped.
SwapResult fair_swap_detailed(const Dataset& ds, const FairnessSpec& spec, std::uint64_t seed = 0);
Selection fair_swap(const Dataset& ds, const FairnessSpec& spec, std::uint64_t seed = 0);

// Same procedure restricted to `universe`, whose elements must each belong to
// exactly one of `groups`. Targets may be zero.
SwapResult fair_swap_within(const Dataset& ds, std::span<const ElementId> universe,
                            std::array<std::size_t, 2> groups, std::array<int, 2> targets,
                            std::uint64_t seed);

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

struct FairGmmOptions {
  std::uint64_t seed = 0;
  std::uint64_t budget = kDefaultBudget;
};

// Any number of disjoint groups, 1/5 guarantee. Runs GMM for k points inside
// every group, then searches all ways of taking k_i of group i's greedy picks.
// Throws BudgetError when the number of combinations exceeds the budget.
Selection fair_gmm(const Dataset& ds, const FairnessSpec& spec, const FairGmmOptions& options = {});

// prod_i C(|Y_i|, k_i), saturating at UINT64_MAX.
std::uint64_t fair_gmm_candidate_count(std::span<const std::size_t> pool_sizes,
                                       std::span<const int> counts);

}  // namespace fairdiv

#endif  // FAIRDIV_DISJOINT_HPP_
