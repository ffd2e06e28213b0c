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

#include "fairdiv/clustering.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "fairdiv/flow_network.hpp"
#include "fairdiv/gmm.hpp"
#include "guess_driver.hpp"

namespace fairdiv {

double covering_radius(const Dataset& ds, std::span<const ElementId> centers) {
  if (centers.empty()) throw std::invalid_argument("covering radius of an empty center set");
  const auto all = ds.all_elements();
  FarthestFirst ff(ds, all, centers);
  double radius = 0.0;
  for (std::size_t i = 0; i < all.size(); ++i) radius = std::max(radius, ff.min_distance(i));
  return radius;
}

namespace {

struct ClusterContext {
  std::vector<std::size_t> groups;      // groups with k_i > 0
  GmmState y;                           // k + 1 greedy points (fewer if n is small)
  std::vector<std::vector<ElementId>> nearest;  // [j][slot]: nearest member of groups[slot] to y_j
  std::uint64_t evaluations = 0;
};

ClusterContext make_context(const Dataset& ds, const FairnessSpec& spec, std::uint64_t seed) {
  ClusterContext ctx;
  const auto k = static_cast<std::size_t>(spec.total());
  for (std::size_t g = 0; g < spec.group_count(); ++g) {
    if (spec.counts[g] > 0) ctx.groups.push_back(g);
  }
  const auto all = ds.all_elements();
  ctx.y = gmm(ds, all, {}, k + 1, seed);
  ctx.evaluations += ctx.y.evaluations;
  const std::size_t rows = std::min(k, ctx.y.selected.size());
  for (std::size_t j = 0; j < rows; ++j) {
    std::vector<ElementId> row;
    for (std::size_t g : ctx.groups) {
      ElementId best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (ElementId u : ds.members(g)) {
        const double d = ds.distance(ctx.y.selected[j], u);
        if (d < best_d) {
          best_d = d;
          best = u;
        }
      }
      ctx.evaluations += ds.members(g).size();
      row.push_back(best);
    }
    ctx.nearest.push_back(std::move(row));
  }
  return ctx;
}

ClusterResult all_points_result(const Dataset& ds) {
  ClusterResult r;
  r.centers = ds.all_elements();
  r.radius = 0.0;
  r.per_group_counts = group_counts(ds, r.centers);
  r.gamma_used = 0.0;
  return r;
}

ClusterResult probe_with_context(const Dataset& ds, const FairnessSpec& spec,
                                 const ClusterContext& ctx, double gamma, std::uint64_t seed) {
  ClusterResult r;
  r.gamma_used = gamma;
  r.probes = 1;
  const auto k = static_cast<std::size_t>(spec.total());
  const auto& gains = ctx.y.marginal_gains;
  if (gains[k] > 2.0 * gamma) {
    r.aborted = true;
    return r;
  }
  std::size_t t = 1;
  while (gains[t] > 2.0 * gamma) ++t;

  AssignmentProblem problem;
  for (std::size_t g : ctx.groups) problem.class_capacity.push_back(spec.counts[g]);
  problem.component_count = t;
  for (std::size_t j = 0; j < t; ++j) {
    for (std::size_t s = 0; s < ctx.groups.size(); ++s) {
      if (ds.distance(ctx.nearest[j][s], ctx.y.selected[j]) <= gamma) problem.incidences.emplace_back(s, j);
    }
  }
  r.diagnostics.distance_evaluations += t * ctx.groups.size();
  const Assignment flow = solve_assignment(problem);
  ++r.diagnostics.flow_networks;
  if (flow.value < static_cast<std::int64_t>(t)) {
    r.aborted = true;
    return r;
  }
  for (const auto& [s, j] : flow.used) r.centers.push_back(ctx.nearest[j][s]);

  // Top up each group farthest-first from the current centers.
  for (std::size_t s = 0; s < ctx.groups.size(); ++s) {
    const std::size_t g = ctx.groups[s];
    const auto have = static_cast<int>(std::count_if(
        r.centers.begin(), r.centers.end(), [&](ElementId u) { return ds.primary_group(u) == g; }));
    if (have >= spec.counts[g]) continue;
    GmmState pad = gmm(ds, ds.members(g), r.centers, static_cast<std::size_t>(spec.counts[g] - have), seed);
    r.diagnostics.distance_evaluations += pad.evaluations;
    r.centers.insert(r.centers.end(), pad.selected.begin(), pad.selected.end());
  }

  std::vector<ElementId> sorted = r.centers;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvariantViolation("fair-kcenter: duplicate center");
  }
  const std::span<const ElementId> prefix(ctx.y.selected.data(), t);
  if (covering_radius(ds, prefix) > 2.0 * gamma) {
    throw InvariantViolation("fair-kcenter: greedy prefix does not cover within 2*gamma");
  }
  r.radius = covering_radius(ds, r.centers);
  r.diagnostics.distance_evaluations += 2 * static_cast<std::uint64_t>(ds.size()) * (t + r.centers.size());
  if (r.radius > 3.0 * gamma * (1.0 + 1e-9)) {
    throw InvariantViolation("fair-kcenter: radius " + std::to_string(r.radius) + " exceeds 3*gamma");
  }
  r.per_group_counts = group_counts(ds, r.centers);
  for (std::size_t g = 0; g < spec.group_count(); ++g) {
    if (r.per_group_counts[g] != spec.counts[g]) {
      throw InvariantViolation("fair-kcenter: group count mismatch after padding");
    }
  }
  ++r.diagnostics.component_checks;
  return r;
}

void check_spec(const Dataset& ds, const FairnessSpec& spec) {
  if (spec.mode != Mode::kDisjoint) throw InfeasibleError("fair-kcenter needs disjoint constraints");
  validate_spec(ds, spec);
}

}  // namespace

ClusterResult fair_kcenter_probe(const Dataset& ds, const FairnessSpec& spec, double gamma,
                                 std::uint64_t seed) {
  check_spec(ds, spec);
  if (!(gamma >= 0.0)) throw std::invalid_argument("fair-kcenter: gamma must be >= 0");
  if (static_cast<std::size_t>(spec.total()) >= ds.size()) {
    ClusterResult r = all_points_result(ds);
    r.gamma_used = gamma;
    r.probes = 1;
    return r;
  }
  const ClusterContext ctx = make_context(ds, spec, seed);
  ClusterResult r = probe_with_context(ds, spec, ctx, gamma, seed);
  r.diagnostics.distance_evaluations += ctx.evaluations;
  return r;
}

ClusterResult fair_kcenter(const Dataset& ds, const FairnessSpec& spec, const GuessSearch& search,
                           std::uint64_t seed) {
  check_spec(ds, spec);
  if (static_cast<std::size_t>(spec.total()) >= ds.size()) return all_points_result(ds);
  const ClusterContext ctx = make_context(ds, spec, seed);

  std::vector<ElementId> pool = ctx.y.selected;
  for (const auto& row : ctx.nearest) pool.insert(pool.end(), row.begin(), row.end());
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  std::vector<double> breakpoints;
  for (std::size_t a = 0; a < pool.size(); ++a) {
    for (std::size_t b = a + 1; b < pool.size(); ++b) {
      const double d = ds.distance(pool[a], pool[b]);
      breakpoints.push_back(d);
      breakpoints.push_back(d / 2.0);
    }
  }
  std::vector<double> guesses{0.0};
  if (search.kind == GuessSearch::Kind::kDiscrete) {
    guesses.insert(guesses.end(), breakpoints.begin(), breakpoints.end());
  } else {
    const auto [lo, hi] = positive_range(breakpoints);
    if (lo > 0.0) {
      const auto grid = geometric_grid(lo, hi, search.eps);
      guesses.insert(guesses.end(), grid.begin(), grid.end());
    }
  }
  guesses = normalize_candidates(std::move(guesses));

  ClusterResult best = drive_guess_search<ClusterResult>(
      guesses, SearchGoal::kSmallestSuccess, "fair-kcenter",
      [&](double gamma) {
        ClusterResult r = probe_with_context(ds, spec, ctx, gamma, seed);
        return ProbeOutcome<ClusterResult>{!r.aborted, std::move(r)};
      },
      [](const ClusterResult& a, const ClusterResult& b) {
        if (a.radius != b.radius) return a.radius < b.radius;
        return a.gamma_used.value_or(0.0) < b.gamma_used.value_or(0.0);
      },
      [](const ClusterResult& r) { return r.radius; });
  best.diagnostics.distance_evaluations += ctx.evaluations;
  return best;
}

}  // namespace fairdiv
