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

// Flow-based fair selection for any number of disjoint groups.

#ifndef FAIRDIV_FAIR_FLOW_HPP_
#define FAIRDIV_FAIR_FLOW_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "fairdiv/core.hpp"
#include "fairdiv/gmm.hpp"
#include "fairdiv/search.hpp"

namespace fairdiv {

// Connected components of the graph joining points closer than `threshold`.
// Returns a component index per point; components are numbered in order of
// their first point.
std::vector<std::size_t> threshold_components(const Dataset& ds, std::span<const ElementId> points,
                                              double threshold, std::uint64_t* evaluations = nullptr);

// Gamma-independent part: GMM(U_i, k) for every group with k_i > 0.
struct FlowPool {
  std::vector<std::size_t> groups;  // groups with k_i > 0, increasing
  std::vector<GmmState> y;          // aligned with groups
  std::uint64_t evaluations = 0;
};

FlowPool build_flow_pool(const Dataset& ds, const FairnessSpec& spec, std::uint64_t seed = 0);

// Candidates and conflict components for one guess.
struct FlowCandidates {
  double gamma = 0.0;
  double d1 = 0.0;  // separation inside a group's prefix
  double d2 = 0.0;  // conflict threshold
  std::vector<std::vector<ElementId>> z;     // aligned with FlowPool::groups
  std::vector<ElementId> points;             // concatenation of z
  std::vector<std::size_t> point_slot;       // index into groups, per point
  std::vector<std::size_t> component;        // per point
  std::size_t component_count = 0;
};

// d2 = gamma / (3m - 1), d1 = m * d2 with m = spec.group_count(). Throws
// InvariantViolation if a component holds two points of one group or two
// points at distance >= (m - 1) * d2.
FlowCandidates flow_candidates(const Dataset& ds, const FairnessSpec& spec, const FlowPool& pool,
                               double gamma, Diagnostics* diagnostics = nullptr);

// One guess. Aborts (flag set, no exception) when the assignment flow falls
// short of sum k_i. A non-aborted result meets every k_i exactly with all
// pairwise distances >= gamma / (3m - 1).
Selection fair_flow_probe(const Dataset& ds, const FairnessSpec& spec, double gamma,
                          std::uint64_t seed = 0);
Selection fair_flow_probe(const Dataset& ds, const FairnessSpec& spec, const FlowPool& pool,
                          double gamma);

// Guess values tried by fair_flow, sorted.
std::vector<double> fair_flow_guesses(const Dataset& ds, const FairnessSpec& spec,
                                      const FlowPool& pool, const GuessSearch& search);

// Binary search for the largest non-aborting guess; returns the most diverse
// verified selection seen over all probes. 1/(3m-1) guarantee, or
// 1/((3m-1)(1+eps)) with the continuous grid.
Selection fair_flow(const Dataset& ds, const FairnessSpec& spec,
                    const GuessSearch& search = GuessSearch::discrete(), std::uint64_t seed = 0);

}  // namespace fairdiv

#endif  // FAIRDIV_FAIR_FLOW_HPP_
