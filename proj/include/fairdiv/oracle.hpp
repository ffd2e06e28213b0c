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

// Exact brute-force solvers for small instances.

#ifndef FAIRDIV_ORACLE_HPP_
#define FAIRDIV_ORACLE_HPP_

#include <cstdint>
#include <vector>

#include "fairdiv/core.hpp"

namespace fairdiv {

inline constexpr std::uint64_t kDefaultOracleBudget = 10'000'000;

struct OracleResult {
  double opt_value = 0.0;
  std::vector<ElementId> witness;  // increasing ids
  std::uint64_t enumerated = 0;    // feasible subsets fully evaluated
};

// Upper bound on the subsets the oracle may visit: prod_i C(|U_i|, k_i) for
// disjoint specs, sum_{s <= sum k_i} C(n, s) for overlapping ones.
std::uint64_t oracle_subset_bound(const Dataset& ds, const FairnessSpec& spec);

// Maximum diversity over feasible sets: exact counts for disjoint specs,
// |S n U_i| >= k_i with |S| <= sum k_i for overlapping ones. The witness is
// the lexicographically smallest optimal id sequence. Throws BudgetError when
// the bound exceeds `budget`.
OracleResult oracle_fair_maxmin(const Dataset& ds, const FairnessSpec& spec,
                                std::uint64_t budget = kDefaultOracleBudget);

// Minimum covering radius over center sets with exactly k_i per group.
OracleResult oracle_fair_kcenter(const Dataset& ds, const FairnessSpec& spec,
                                 std::uint64_t budget = kDefaultOracleBudget);

// Unconstrained optimum over all k-subsets.
OracleResult oracle_maxmin(const Dataset& ds, std::size_t k,
                           std::uint64_t budget = kDefaultOracleBudget);

}  // namespace fairdiv

#endif  // FAIRDIV_ORACLE_HPP_
