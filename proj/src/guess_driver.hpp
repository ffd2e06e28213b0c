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

// Shared driver for the guess-and-probe solvers.

#ifndef FAIRDIV_SRC_GUESS_DRIVER_HPP_
#define FAIRDIV_SRC_GUESS_DRIVER_HPP_

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fairdiv/core.hpp"
#include "fairdiv/search.hpp"

namespace fairdiv {

template <class Result>
struct ProbeOutcome {
  bool success;
  Result result;
};

inline void add_diagnostics(Diagnostics& into, const Diagnostics& from) {
  into.distance_evaluations += from.distance_evaluations;
  into.flow_networks += from.flow_networks;
  into.component_checks += from.component_checks;
  into.guesses_tried += from.guesses_tried;
  into.non_monotone = into.non_monotone || from.non_monotone;
}

// Appends 2 * max(values) when that is positive.
inline void add_sentinel(std::vector<double>& values) {
  if (values.empty()) return;
  const double top = *std::max_element(values.begin(), values.end());
  if (top > 0.0) values.push_back(2.0 * top);
}

// (smallest positive value, largest value); (0, 0) if nothing is positive.
inline std::pair<double, double> positive_range(std::span<const double> values) {
  double lo = 0.0;
  double hi = 0.0;
  for (double v : values) {
    if (v > 0.0 && (lo == 0.0 || v < lo)) lo = v;
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

// Runs the binary search and keeps the best successful result over every
// probe. `better(a, b)` is a strict preference; `objective(r)` is the value
// the guesses estimate (diversity or radius). The returned result carries the
// summed diagnostics, the probe count and the non-monotonicity flag, which is
// set when a probe failed at a guess the final answer shows to be achievable.
// Throws InvariantViolation if no probe succeeds.
template <class Result, class Probe, class Better, class Objective>
Result drive_guess_search(std::span<const double> guesses, SearchGoal goal, const std::string& name,
                          Probe&& probe, Better&& better, Objective&& objective) {
  std::optional<Result> best;
  Diagnostics total;
  const SearchTrace trace = binary_search_guesses(guesses, goal, [&](double gamma) {
    ProbeOutcome<Result> out = probe(gamma);
    add_diagnostics(total, out.result.diagnostics);
    if (out.success && (!best || better(out.result, *best))) best = std::move(out.result);
    return out.success;
  });
  if (!best) throw InvariantViolation(name + ": no guess succeeded, including gamma = 0");
  const double achieved = objective(*best);
  for (const auto& [gamma, ok] : trace.probes) {
    if (ok) continue;
    const bool achievable = goal == SearchGoal::kLargestSuccess ? gamma <= achieved : gamma >= achieved;
    if (achievable) total.non_monotone = true;
  }
  best->diagnostics = total;
  best->probes = static_cast<int>(trace.probes.size());
  return std::move(*best);
}

// Max-min flavour: higher diversity wins, ties go to the smaller guess.
template <class Probe>
Selection run_guess_search(std::span<const double> guesses, SearchGoal goal, const std::string& name,
                           Probe&& probe) {
  return drive_guess_search<Selection>(
      guesses, goal, name, std::forward<Probe>(probe),
      [](const Selection& a, const Selection& b) {
        if (a.diversity != b.diversity) return a.diversity > b.diversity;
        return a.gamma_used.value_or(0.0) < b.gamma_used.value_or(0.0);
      },
      [](const Selection& s) { return s.diversity; });
}

}  // namespace fairdiv

#endif  // FAIRDIV_SRC_GUESS_DRIVER_HPP_
