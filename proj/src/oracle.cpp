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

#include "fairdiv/oracle.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "fairdiv/combinatorics.hpp"

namespace fairdiv {

std::uint64_t oracle_subset_bound(const Dataset& ds, const FairnessSpec& spec) {
  if (spec.mode == Mode::kDisjoint) {
    std::uint64_t total = 1;
    for (std::size_t g = 0; g < spec.group_count(); ++g) {
      total = saturating_mul(total, binomial(ds.members(g).size(), static_cast<std::uint64_t>(spec.counts[g])));
    }
    return total;
  }
  std::uint64_t total = 0;
  for (int s = 0; s <= spec.total(); ++s) {
    total = saturating_add(total, binomial(ds.size(), static_cast<std::uint64_t>(s)));
  }
  return total;
}

namespace {

void check_budget(const char* what, std::uint64_t bound, std::uint64_t budget) {
  if (bound > budget) {
    throw BudgetError(std::string(what) + ": " + std::to_string(bound) +
                          " subsets exceed the budget of " + std::to_string(budget),
                      bound, budget);
  }
}

// Depth-first enumeration over ids in increasing order, including an id
// before excluding it, so complete sets appear in lexicographic order.
class Enumerator {
 public:
  enum class Objective { kMaxMin, kMinRadius };

  Enumerator(const Dataset& ds, const FairnessSpec& spec, Objective objective)
      : ds_(ds), spec_(spec), objective_(objective), n_(ds.size()) {
    dist_.resize(n_ * n_);
    for (ElementId a = 0; a < n_; ++a) {
      for (ElementId b = 0; b < n_; ++b) dist_[a * n_ + b] = ds.distance(a, b);
    }
    // remaining_[g][u] = members of group g with id >= u.
    remaining_.assign(spec.group_count(), std::vector<int>(n_ + 1, 0));
    for (std::size_t g = 0; g < spec.group_count(); ++g) {
      for (std::size_t u = n_; u-- > 0;) {
        remaining_[g][u] = remaining_[g][u + 1] + (ds.in_group(static_cast<ElementId>(u), g) ? 1 : 0);
      }
    }
    have_.assign(spec.group_count(), 0);
    best_ = objective == Objective::kMaxMin ? -1.0 : std::numeric_limits<double>::infinity();
  }

  OracleResult run() {
    if (spec_.mode == Mode::kOverlapping && satisfied()) {
      // The empty set already meets every bound.
      record(kInfiniteDiversity);
    } else {
      visit(0, kInfiniteDiversity);
    }
    OracleResult r;
    r.opt_value = best_;
    r.witness = witness_;
    r.enumerated = enumerated_;
    return r;
  }

 private:
  bool satisfied() const {
    for (std::size_t g = 0; g < have_.size(); ++g) {
      if (have_[g] < spec_.counts[g]) return false;
    }
    return true;
  }

  bool complete() const {
    if (spec_.mode == Mode::kOverlapping) return satisfied();
    for (std::size_t g = 0; g < have_.size(); ++g) {
      if (have_[g] != spec_.counts[g]) return false;
    }
    return true;
  }

  // Can ids >= u still complete the current partial set?
  bool reachable(std::size_t u) const {
    const int room = spec_.total() - static_cast<int>(stack_.size());
    for (std::size_t g = 0; g < have_.size(); ++g) {
      const int deficit = spec_.counts[g] - have_[g];
      if (deficit > remaining_[g][u] || deficit > room) return false;
    }
    return true;
  }

  bool may_include(ElementId u) const {
    if (spec_.mode == Mode::kOverlapping) return stack_.size() < static_cast<std::size_t>(spec_.total());
    const std::size_t g = ds_.primary_group(u);
    return have_[g] < spec_.counts[g];
  }

  void record(double value) {
    ++enumerated_;
    const bool improves = objective_ == Objective::kMaxMin ? value > best_ : value < best_;
    if (improves || enumerated_ == 1) {
      best_ = value;
      witness_ = stack_;
    }
  }

  double radius() const {
    double r = 0.0;
    for (std::size_t u = 0; u < n_; ++u) {
      double nearest = std::numeric_limits<double>::infinity();
      for (ElementId c : stack_) nearest = std::min(nearest, dist_[u * n_ + c]);
      r = std::max(r, nearest);
    }
    return r;
  }

  void visit(std::size_t u, double current) {
    if (complete()) {
      record(objective_ == Objective::kMaxMin ? current : radius());
      return;
    }
    if (u == n_ || !reachable(u)) return;
    const auto id = static_cast<ElementId>(u);
    if (may_include(id)) {
      double next = current;
      for (ElementId p : stack_) next = std::min(next, dist_[p * n_ + u]);
      const bool pruned = objective_ == Objective::kMaxMin && enumerated_ > 0 && next <= best_;
      if (!pruned) {
        stack_.push_back(id);
        for (std::size_t g = 0; g < have_.size(); ++g) have_[g] += ds_.in_group(id, g) ? 1 : 0;
        visit(u + 1, next);
        for (std::size_t g = 0; g < have_.size(); ++g) have_[g] -= ds_.in_group(id, g) ? 1 : 0;
        stack_.pop_back();
      }
    }
    visit(u + 1, current);
  }

  const Dataset& ds_;
  const FairnessSpec& spec_;
  Objective objective_;
  std::size_t n_;
  std::vector<double> dist_;
  std::vector<std::vector<int>> remaining_;
  std::vector<int> have_;
  std::vector<ElementId> stack_;
  std::vector<ElementId> witness_;
  double best_;
  std::uint64_t enumerated_ = 0;
};

}  // namespace

OracleResult oracle_fair_maxmin(const Dataset& ds, const FairnessSpec& spec, std::uint64_t budget) {
  validate_spec(ds, spec);
  check_budget("oracle", oracle_subset_bound(ds, spec), budget);
  return Enumerator(ds, spec, Enumerator::Objective::kMaxMin).run();
}

OracleResult oracle_fair_kcenter(const Dataset& ds, const FairnessSpec& spec, std::uint64_t budget) {
  if (spec.mode != Mode::kDisjoint) throw InfeasibleError("k-center oracle needs disjoint constraints");
  validate_spec(ds, spec);
  check_budget("k-center oracle", oracle_subset_bound(ds, spec), budget);
  return Enumerator(ds, spec, Enumerator::Objective::kMinRadius).run();
}

OracleResult oracle_maxmin(const Dataset& ds, std::size_t k, std::uint64_t budget) {
  if (k == 0 || k > ds.size()) throw InfeasibleError("oracle: k must be in [1, n]");
  check_budget("oracle", binomial(ds.size(), k), budget);
  OracleResult r;
  r.opt_value = -1.0;
  std::vector<ElementId> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = static_cast<ElementId>(i);
  const std::size_t n = ds.size();
  while (true) {
    double value = kInfiniteDiversity;
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = a + 1; b < k; ++b) value = std::min(value, ds.distance(pick[a], pick[b]));
    }
    ++r.enumerated;
    if (value > r.opt_value) {
      r.opt_value = value;
      r.witness = pick;
    }
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return r;
}

}  // namespace fairdiv
