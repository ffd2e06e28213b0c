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

#include "fairdiv/solve.hpp"

#include <array>
#include <utility>

#include "fairdiv/fair_flow.hpp"
#include "fairdiv/gmm.hpp"

namespace fairdiv {

namespace {

constexpr std::array<std::pair<Algorithm, const char*>, 7> kNames{{
    {Algorithm::kGmm, "gmm"},
    {Algorithm::kFairSwap, "fair-swap"},
    {Algorithm::kFairGmm, "fair-gmm"},
    {Algorithm::kFairFlow, "fair-flow"},
    {Algorithm::kFairSwapOverlap, "fair-swap-overlap"},
    {Algorithm::kFairFlowOverlap, "fair-flow-overlap"},
    {Algorithm::kFairKCenter, "fair-kcenter"},
}};

}  // namespace

std::optional<Algorithm> parse_algorithm(const std::string& name) {
  for (const auto& [a, n] : kNames) {
    if (name == n) return a;
  }
  return std::nullopt;
}

std::string algorithm_name(Algorithm a) {
  for (const auto& [x, n] : kNames) {
    if (x == a) return n;
  }
  return "unknown";
}

const std::vector<Algorithm>& all_algorithms() {
  static const std::vector<Algorithm> list = [] {
    std::vector<Algorithm> v;
    for (const auto& [a, n] : kNames) v.push_back(a);
    return v;
  }();
  return list;
}

Mode constraint_mode(Algorithm a) {
  return a == Algorithm::kFairSwapOverlap || a == Algorithm::kFairFlowOverlap ? Mode::kOverlapping
                                                                              : Mode::kDisjoint;
}

bool is_clustering(Algorithm a) { return a == Algorithm::kFairKCenter; }

double approximation_bound(Algorithm a, std::size_t m, const GuessSearch& search) {
  const double slack = search.kind == GuessSearch::Kind::kContinuous ? 1.0 + search.eps : 1.0;
  switch (a) {
    case Algorithm::kGmm:
      return 0.5;
    case Algorithm::kFairSwap:
      return 0.25;
    case Algorithm::kFairGmm:
      return 0.2;
    case Algorithm::kFairFlow:
      return 1.0 / ((3.0 * static_cast<double>(m) - 1.0) * slack);
    case Algorithm::kFairSwapOverlap:
      return 0.25 / slack;
    case Algorithm::kFairFlowOverlap:
      return 1.0 / ((3.0 * static_cast<double>(sperner_bound(static_cast<int>(m))) - 1.0) * slack);
    case Algorithm::kFairKCenter:
      return 3.0 * slack;
  }
  return 0.0;
}

Selection gmm_selection(const Dataset& ds, std::size_t k, std::uint64_t seed) {
  if (k == 0 || k > ds.size()) throw InfeasibleError("gmm: k must be in [1, n]");
  const auto all = ds.all_elements();
  GmmState state = gmm(ds, all, {}, k, seed);
  Selection sel;
  sel.algorithm = "gmm";
  sel.chosen = std::move(state.selected);
  sel.diagnostics.distance_evaluations = state.evaluations;
  finalize_selection(ds, sel);
  return sel;
}

SolveResult solve(Algorithm a, const Dataset& ds, const FairnessSpec& raw_spec,
                  const SolveOptions& options) {
  FairnessSpec spec = raw_spec;
  spec.mode = constraint_mode(a);
  switch (a) {
    case Algorithm::kGmm:
      return gmm_selection(ds, static_cast<std::size_t>(std::max(0, spec.total())), options.seed);
    case Algorithm::kFairSwap:
      return fair_swap(ds, spec, options.seed);
    case Algorithm::kFairGmm:
      return fair_gmm(ds, spec, {options.seed, options.budget});
    case Algorithm::kFairFlow:
      return fair_flow(ds, spec, options.search, options.seed);
    case Algorithm::kFairSwapOverlap:
      return fair_swap_overlap(ds, spec, options.search, options.seed);
    case Algorithm::kFairFlowOverlap:
      return fair_flow_overlap(ds, spec, options.search, {options.seed, options.m_cap});
    case Algorithm::kFairKCenter:
      return fair_kcenter(ds, spec, options.search, options.seed);
  }
  throw std::invalid_argument("unknown algorithm");
}

}  // namespace fairdiv
