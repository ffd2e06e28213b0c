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

// Binary search over sorted guesses of the optimum.

#ifndef FAIRDIV_SEARCH_HPP_
#define FAIRDIV_SEARCH_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace fairdiv {

struct GuessSearch {
  enum class Kind { kDiscrete, kContinuous };
  Kind kind = Kind::kDiscrete;
  double eps = 0.1;  // continuous grid ratio is 1 + eps

  static GuessSearch discrete() { return {}; }
  static GuessSearch continuous(double eps) { return {Kind::kContinuous, eps}; }
};

enum class SearchGoal {
  kLargestSuccess,   // diversification: success holds on a prefix
  kSmallestSuccess,  // clustering: success holds on a suffix
};

struct SearchTrace {
  std::vector<std::pair<double, bool>> probes;  // in evaluation order
  std::optional<std::size_t> final_index;       // into the candidate list
};

// Binary search for the boundary of the success region. The anchor end
// (first candidate for kLargestSuccess, last for kSmallestSuccess) is probed
// first; if it fails, final_index stays empty.
//
// If success holds on the whole prefix [0, p] (resp. suffix), the result is
// at or beyond p whatever the predicate does outside it.
SearchTrace binary_search_guesses(std::span<const double> sorted_candidates, SearchGoal goal,
                                  const std::function<bool(double)>& probe);

// Sorted, deduplicated (exact comparison) copy without negatives or NaNs.
std::vector<double> normalize_candidates(std::vector<double> values);

// lo * (1 + eps)^i for i = 0, 1, ... up to the first value >= hi.
std::vector<double> geometric_grid(double lo, double hi, double eps);

}  // namespace fairdiv

#endif  // FAIRDIV_SEARCH_HPP_
