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

// Fair k-center: choose exactly k_i centers from group i minimizing the
// covering radius.

#ifndef FAIRDIV_CLUSTERING_HPP_
#define FAIRDIV_CLUSTERING_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fairdiv/core.hpp"
#include "fairdiv/search.hpp"

namespace fairdiv {

struct ClusterResult {
  std::vector<ElementId> centers;
  double radius = 0.0;
  std::vector<int> per_group_counts;
  std::optional<double> gamma_used;
  bool aborted = false;
  std::string algorithm = "fair-kcenter";
  int probes = 0;
  Diagnostics diagnostics;
};

// max over all elements of the distance to the nearest center. Throws
// std::invalid_argument on an empty center set.
double covering_radius(const Dataset& ds, std::span<const ElementId> centers);

// One guess. Aborts when the (k+1)-th greedy point lies farther than 2*gamma
// from the first k, or when the flow cannot route t units. A non-aborted
// result has radius <= 3*gamma and exactly k_i centers per group.
ClusterResult fair_kcenter_probe(const Dataset& ds, const FairnessSpec& spec, double gamma,
                                 std::uint64_t seed = 0);

// Binary search for the smallest non-aborting guess; returns the smallest
// verified radius seen. 3x guarantee, 3(1+eps)x with the continuous grid.
ClusterResult fair_kcenter(const Dataset& ds, const FairnessSpec& spec,
                           const GuessSearch& search = GuessSearch::discrete(),
                           std::uint64_t seed = 0);

}  // namespace fairdiv

#endif  // FAIRDIV_CLUSTERING_HPP_
