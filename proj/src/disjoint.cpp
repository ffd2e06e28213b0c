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

#include "fairdiv/disjoint.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "fairdiv/combinatorics.hpp"
#include "fairdiv/gmm.hpp"

namespace fairdiv {

namespace {

// `pools[s]` holds the universe elements of groups[s]; `universe` is their union.
SwapResult swap_core(const Dataset& ds, std::span<const ElementId> universe,
                     const std::array<std::span<const ElementId>, 2>& pools,
                     std::array<std::size_t, 2> groups, std::array<int, 2> targets, std::uint64_t seed) {
  SwapResult out;
  Selection& sel = out.selection;
  sel.algorithm = "fair-swap";
  for (int s = 0; s < 2; ++s) {
    if (targets[s] < 0 || static_cast<std::size_t>(targets[s]) > pools[s].size()) {
      throw InfeasibleError("fair-swap: group '" + ds.group_names()[groups[s]] + "' cannot supply " +
                            std::to_string(targets[s]) + " elements");
    }
  }
  const auto k = static_cast<std::size_t>(targets[0] + targets[1]);
  if (k == 0) {
    finalize_selection(ds, sel);
    return out;
  }

  // Color-blind phase.
  GmmState blind = gmm(ds, universe, {}, k, seed);
  sel.diagnostics.distance_evaluations += blind.evaluations;
  out.trace.color_blind = blind.selected;
  std::array<std::vector<ElementId>, 2> picked;
  for (ElementId u : blind.selected) picked[ds.primary_group(u) == groups[0] ? 0 : 1].push_back(u);

  sel.chosen = blind.selected;
  const bool balanced = picked[0].size() == static_cast<std::size_t>(targets[0]);
  if (!balanced) {
    // Balancing phase.
    const std::size_t under = picked[0].size() < static_cast<std::size_t>(targets[0]) ? 0 : 1;
    const std::size_t over = 1 - under;
    out.trace.under = groups[under];
    out.trace.over = groups[over];
    const std::size_t missing = static_cast<std::size_t>(targets[under]) - picked[under].size();
    GmmState extra = gmm(ds, pools[under], picked[under], missing, seed);
    sel.diagnostics.distance_evaluations += extra.evaluations;
    out.trace.extras = extra.selected;

    std::vector<ElementId> long_side = picked[over];
    for (ElementId e : extra.selected) {
      std::size_t nearest = 0;
      double nearest_d = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < long_side.size(); ++i) {
        const double d = ds.distance(long_side[i], e);
        if (d < nearest_d || (d == nearest_d && long_side[i] < long_side[nearest])) {
          nearest_d = d;
          nearest = i;
        }
      }
      sel.diagnostics.distance_evaluations += long_side.size();
      out.trace.removed.push_back(long_side[nearest]);
      long_side.erase(long_side.begin() + static_cast<std::ptrdiff_t>(nearest));
    }
    std::erase_if(sel.chosen, [&](ElementId u) {
      return std::find(out.trace.removed.begin(), out.trace.removed.end(), u) != out.trace.removed.end();
    });
    sel.chosen.insert(sel.chosen.end(), extra.selected.begin(), extra.selected.end());
  }
  finalize_selection(ds, sel);
  return out;
}

}  // namespace

SwapResult fair_swap_within(const Dataset& ds, std::span<const ElementId> universe,
                            std::array<std::size_t, 2> groups, std::array<int, 2> targets,
                            std::uint64_t seed) {
  std::array<std::vector<ElementId>, 2> pools;
  for (ElementId u : universe) {
    const std::size_t g = ds.primary_group(u);
    if (ds.membership(u) != (GroupMask{1} << g) || (g != groups[0] && g != groups[1])) {
      throw std::invalid_argument("fair_swap_within: element outside the two single-label groups");
    }
    pools[g == groups[0] ? 0 : 1].push_back(u);
  }
  return swap_core(ds, universe, {pools[0], pools[1]}, groups, targets, seed);
}

SwapResult fair_swap_detailed(const Dataset& ds, const FairnessSpec& spec, std::uint64_t seed) {
  if (ds.group_count() != 2) throw InfeasibleError("fair-swap needs exactly two groups");
  if (spec.mode != Mode::kDisjoint) throw InfeasibleError("fair-swap needs disjoint constraints");
  validate_spec(ds, spec);
  const auto all = ds.all_elements();
  return swap_core(ds, all, {ds.members(0), ds.members(1)}, {0, 1}, {spec.counts[0], spec.counts[1]}, seed);
}

Selection fair_swap(const Dataset& ds, const FairnessSpec& spec, std::uint64_t seed) {
  return fair_swap_detailed(ds, spec, seed).selection;
}

std::uint64_t fair_gmm_candidate_count(std::span<const std::size_t> pool_sizes,
                                       std::span<const int> counts) {
  std::uint64_t total = 1;
  for (std::size_t g = 0; g < counts.size(); ++g) {
    total = saturating_mul(total, binomial(pool_sizes[g], static_cast<std::uint64_t>(counts[g])));
  }
  return total;
}

namespace {

// Best union of per-group combinations by min pairwise distance. Groups are
// filled in order, combinations in lexicographic order; a partial set that
// already cannot beat the incumbent is cut.
class PoolSearch {
 public:
  PoolSearch(const Dataset& ds, std::vector<std::vector<ElementId>> pools, std::vector<int> counts)
      : pools_(std::move(pools)), counts_(std::move(counts)) {
    for (const auto& p : pools_) flat_.insert(flat_.end(), p.begin(), p.end());
    const std::size_t n = flat_.size();
    dist_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) dist_[a * n + b] = ds.distance(flat_[a], flat_[b]);
    }
    std::size_t offset = 0;
    for (const auto& p : pools_) {
      offsets_.push_back(offset);
      offset += p.size();
    }
  }

  std::vector<ElementId> run() {
    recurse(0, 0, 0, std::numeric_limits<double>::infinity());
    std::vector<ElementId> out;
    for (std::size_t idx : best_) out.push_back(flat_[idx]);
    return out;
  }

 private:
  void recurse(std::size_t group, std::size_t start, int taken, double current) {
    if (group == pools_.size()) {
      if (!found_ || current > best_value_) {
        found_ = true;
        best_value_ = current;
        best_ = stack_;
      }
      return;
    }
    if (taken == counts_[group]) {
      recurse(group + 1, 0, 0, current);
      return;
    }
    const std::size_t size = pools_[group].size();
    const std::size_t need = static_cast<std::size_t>(counts_[group] - taken);
    for (std::size_t i = start; i + need <= size; ++i) {
      const std::size_t idx = offsets_[group] + i;
      double next = current;
      for (std::size_t prev : stack_) next = std::min(next, dist_[prev * flat_.size() + idx]);
      if (found_ && next <= best_value_) continue;
      stack_.push_back(idx);
      recurse(group, i + 1, taken + 1, next);
      stack_.pop_back();
    }
  }

  std::vector<std::vector<ElementId>> pools_;
  std::vector<int> counts_;
  std::vector<ElementId> flat_;
  std::vector<std::size_t> offsets_;
  std::vector<double> dist_;
  std::vector<std::size_t> stack_;
  std::vector<std::size_t> best_;
  double best_value_ = 0.0;
  bool found_ = false;
};

}  // namespace

Selection fair_gmm(const Dataset& ds, const FairnessSpec& spec, const FairGmmOptions& options) {
  if (spec.mode != Mode::kDisjoint) throw InfeasibleError("fair-gmm needs disjoint constraints");
  validate_spec(ds, spec);
  Selection sel;
  sel.algorithm = "fair-gmm";
  const auto k = static_cast<std::size_t>(spec.total());

  std::vector<std::vector<ElementId>> pools;
  std::vector<int> counts;
  std::vector<std::size_t> sizes;
  for (std::size_t g = 0; g < ds.group_count(); ++g) {
    if (spec.counts[g] == 0) continue;
    GmmState y = gmm(ds, ds.members(g), {}, k, options.seed);
    sel.diagnostics.distance_evaluations += y.evaluations;
    std::sort(y.selected.begin(), y.selected.end());
    sizes.push_back(y.selected.size());
    pools.push_back(std::move(y.selected));
    counts.push_back(spec.counts[g]);
  }
  const std::uint64_t candidates = fair_gmm_candidate_count(sizes, counts);
  if (candidates > options.budget) {
    throw BudgetError("fair-gmm: exhaustive search over " + std::to_string(candidates) +
                          " candidate sets exceeds the budget of " + std::to_string(options.budget),
                      candidates, options.budget);
  }
  PoolSearch search(ds, std::move(pools), std::move(counts));
  sel.chosen = search.run();
  finalize_selection(ds, sel);
  return sel;
}

}  // namespace fairdiv
