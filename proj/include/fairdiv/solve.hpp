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

// Name-based dispatch over every solver.

#ifndef FAIRDIV_SOLVE_HPP_
#define FAIRDIV_SOLVE_HPP_

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fairdiv/clustering.hpp"
#include "fairdiv/core.hpp"
#include "fairdiv/disjoint.hpp"
#include "fairdiv/overlap.hpp"
#include "fairdiv/search.hpp"

namespace fairdiv {

enum class Algorithm {
  kGmm,
  kFairSwap,
  kFairGmm,
  kFairFlow,
  kFairSwapOverlap,
  kFairFlowOverlap,
  kFairKCenter,
};

std::optional<Algorithm> parse_algorithm(const std::string& name);
std::string algorithm_name(Algorithm a);
const std::vector<Algorithm>& all_algorithms();

// Constraint semantics the algorithm works with.
Mode constraint_mode(Algorithm a);
bool is_clustering(Algorithm a);

// Worst-case ratio: a lower bound on diversity/OPT for max-min solvers, an
// upper bound on radius/OPT for k-center. m is the group count.
double approximation_bound(Algorithm a, std::size_t m, const GuessSearch& search);

struct SolveOptions {
  GuessSearch search = GuessSearch::discrete();
  std::uint64_t seed = 0;
  std::uint64_t budget = kDefaultBudget;
  int m_cap = kDefaultMCap;
};

using SolveResult = std::variant<Selection, ClusterResult>;

// For kGmm the constraint total is the unconstrained k.
SolveResult solve(Algorithm a, const Dataset& ds, const FairnessSpec& spec,
                  const SolveOptions& options = {});

// Unconstrained greedy wrapped as a selection.
Selection gmm_selection(const Dataset& ds, std::size_t k, std::uint64_t seed = 0);

}  // namespace fairdiv

#endif  // FAIRDIV_SOLVE_HPP_
