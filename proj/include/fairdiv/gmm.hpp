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

// Farthest-first traversal (GMM).

#ifndef FAIRDIV_GMM_HPP_
#define FAIRDIV_GMM_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fairdiv/core.hpp"

namespace fairdiv {

// Incremental farthest-first traversal over a fixed universe.
//
// Keeps, for every universe element, its distance to the nearest point taken
// so far (initial points included), so each pick costs one pass over the
// universe. Ties go to the smallest id.
class FarthestFirst {
 public:
  struct Pick {
    ElementId element;
    double gain;  // distance to the nearest earlier point; +inf if none
  };

  FarthestFirst(const Dataset& ds, std::span<const ElementId> universe,
                std::span<const ElementId> initial);

  // Next greedy pick without taking it; nullopt once every element is taken.
  std::optional<Pick> peek() const;
  Pick take_next();
  // Takes a specific universe element (used for the seeded first pick).
  Pick take(ElementId element);

  std::size_t remaining() const { return remaining_; }
  bool has_reference_points() const { return has_reference_; }
  // Sorted, deduplicated universe.
  std::span<const ElementId> universe() const { return universe_; }
  // Distance from universe()[i] to the nearest taken/initial point.
  double min_distance(std::size_t i) const;
  std::uint64_t evaluations() const { return evaluations_; }

 private:
  void relax_from(ElementId point);

  const Dataset* ds_;
  std::vector<ElementId> universe_;
  std::vector<double> min_dist_;  // -inf marks taken elements
  std::vector<double> block_;     // gathered feature-major coordinates
  std::vector<double> scratch_;
  // Slot of the first largest min_dist_ as of the last relaxation, when the
  // kernel reported it; re-checked against taken slots before use.
  std::optional<std::size_t> cached_best_;
  bool identity_universe_ = false;
  bool has_reference_ = false;
  std::size_t remaining_ = 0;
  std::uint64_t evaluations_ = 0;
};

struct GmmState {
  std::vector<ElementId> selected;
  // Gain of each pick at the moment it was made; non-increasing.
  std::vector<double> marginal_gains;
  std::vector<ElementId> universe;  // sorted
  // Aligned with `universe`: distance to the nearest initial/selected point.
  std::vector<double> min_dist;
  std::uint64_t evaluations = 0;
};

// Selects min(k, |universe \ initial|) points greedily. With an empty
// `initial` the first point is universe[seeded_index(seed, |universe|)].
// Throws std::invalid_argument when k > 0 and the universe is empty.
GmmState gmm(const Dataset& ds, std::span<const ElementId> universe,
             std::span<const ElementId> initial, std::size_t k, std::uint64_t seed = 0);

}  // namespace fairdiv

#endif  // FAIRDIV_GMM_HPP_
