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

#include "fairdiv/fair_flow.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fairdiv/flow_network.hpp"
#include "guess_driver.hpp"

namespace fairdiv {

namespace {

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

std::vector<std::size_t> threshold_components(const Dataset& ds, std::span<const ElementId> points,
                                              double threshold, std::uint64_t* evaluations) {
  const std::size_t n = points.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (ds.distance(points[a], points[b]) < threshold) {
        const std::size_t ra = find_root(parent, a);
        const std::size_t rb = find_root(parent, b);
        if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
      }
    }
  }
  if (evaluations != nullptr) *evaluations += n * (n > 0 ? n - 1 : 0) / 2;
  std::vector<std::size_t> label(n);
  std::vector<std::size_t> root_label(n, n);
  std::size_t next = 0;
  for (std::size_t a = 0; a < n; ++a) {
    const std::size_t r = find_root(parent, a);
    if (root_label[r] == n) root_label[r] = next++;
    label[a] = root_label[r];
  }
  return label;
}

FlowPool build_flow_pool(const Dataset& ds, const FairnessSpec& spec, std::uint64_t seed) {
  FlowPool pool;
  const auto k = static_cast<std::size_t>(spec.total());
  for (std::size_t g = 0; g < spec.group_count(); ++g) {
    if (spec.counts[g] == 0) continue;
    pool.groups.push_back(g);
    pool.y.push_back(gmm(ds, ds.members(g), {}, k, seed));
    pool.evaluations += pool.y.back().evaluations;
  }
  return pool;
}

FlowCandidates flow_candidates(const Dataset& ds, const FairnessSpec& spec, const FlowPool& pool,
                               double gamma, Diagnostics* diagnostics) {
  const double m = static_cast<double>(spec.group_count());
  FlowCandidates c;
  c.gamma = gamma;
  c.d2 = gamma / (3.0 * m - 1.0);
  c.d1 = m * c.d2;
  for (std::size_t s = 0; s < pool.groups.size(); ++s) {
    const GmmState& y = pool.y[s];
    std::vector<ElementId> z;
    for (std::size_t j = 0; j < y.selected.size() && y.marginal_gains[j] >= c.d1; ++j) {
      z.push_back(y.selected[j]);
    }
    for (ElementId u : z) {
      c.points.push_back(u);
      c.point_slot.push_back(s);
    }
    c.z.push_back(std::move(z));
  }
  std::uint64_t evals = 0;
  c.component = threshold_components(ds, c.points, c.d2, &evals);
  c.component_count =
      c.component.empty() ? 0 : *std::max_element(c.component.begin(), c.component.end()) + 1;

  // Component structure: one point per group, diameter below (m - 1) * d2.
  const double bound = (m - 1.0) * c.d2;
  const double slack = bound * 1e-9;
  for (std::size_t a = 0; a < c.points.size(); ++a) {
    for (std::size_t b = a + 1; b < c.points.size(); ++b) {
      if (c.component[a] != c.component[b]) continue;
      if (c.point_slot[a] == c.point_slot[b]) {
        throw InvariantViolation("fair-flow: component holds two points of group '" +
                                 ds.group_names()[pool.groups[c.point_slot[a]]] + "'");
      }
      const double d = ds.distance(c.points[a], c.points[b]);
      ++evals;
      if (!(d < bound + slack)) {
        throw InvariantViolation("fair-flow: component diameter " + std::to_string(d) +
                                 " reaches (m-1)*d2 = " + std::to_string(bound));
      }
    }
  }
  if (diagnostics != nullptr) {
    diagnostics->distance_evaluations += evals;
    ++diagnostics->component_checks;
  }
  return c;
}

Selection fair_flow_probe(const Dataset& ds, const FairnessSpec& spec, const FlowPool& pool,
                          double gamma) {
  Selection sel;
  sel.algorithm = "fair-flow";
  sel.gamma_used = gamma;
  sel.probes = 1;
  const FlowCandidates c = flow_candidates(ds, spec, pool, gamma, &sel.diagnostics);

  AssignmentProblem problem;
  for (std::size_t g : pool.groups) problem.class_capacity.push_back(spec.counts[g]);
  problem.component_count = c.component_count;
  for (std::size_t p = 0; p < c.points.size(); ++p) {
    problem.incidences.emplace_back(c.point_slot[p], c.component[p]);
  }
  const Assignment flow = solve_assignment(problem);
  ++sel.diagnostics.flow_networks;

  if (flow.value < spec.total()) {
    sel.aborted = true;
    finalize_selection(ds, sel);
    return sel;
  }
  for (const auto& [slot, comp] : flow.used) {
    for (std::size_t p = 0; p < c.points.size(); ++p) {
      if (c.point_slot[p] == slot && c.component[p] == comp) {
        sel.chosen.push_back(c.points[p]);
        break;
      }
    }
  }
  finalize_selection(ds, sel);
  if (sel.chosen.size() > 1 && !(sel.diversity >= c.d2)) {
    throw InvariantViolation("fair-flow: selection diversity below gamma/(3m-1)");
  }
  return sel;
}

Selection fair_flow_probe(const Dataset& ds, const FairnessSpec& spec, double gamma,
                          std::uint64_t seed) {
  if (spec.mode != Mode::kDisjoint) throw InfeasibleError("fair-flow needs disjoint constraints");
  validate_spec(ds, spec);
  if (!(gamma >= 0.0)) throw std::invalid_argument("fair-flow: gamma must be >= 0");
  const FlowPool pool = build_flow_pool(ds, spec, seed);
  Selection sel = fair_flow_probe(ds, spec, pool, gamma);
  sel.diagnostics.distance_evaluations += pool.evaluations;
  return sel;
}

std::vector<double> fair_flow_guesses(const Dataset& ds, const FairnessSpec& spec,
                                      const FlowPool& pool, const GuessSearch& search) {
  const double m = static_cast<double>(spec.group_count());
  const double scale = 3.0 * m - 1.0;
  std::vector<ElementId> all;
  for (const GmmState& y : pool.y) all.insert(all.end(), y.selected.begin(), y.selected.end());
  std::vector<double> pairwise;
  for (std::size_t a = 0; a < all.size(); ++a) {
    for (std::size_t b = a + 1; b < all.size(); ++b) pairwise.push_back(ds.distance(all[a], all[b]));
  }
  std::vector<double> guesses{0.0};
  if (search.kind == GuessSearch::Kind::kDiscrete) {
    for (double d : pairwise) {
      guesses.push_back(d * scale);
      guesses.push_back(d * scale / m);
    }
    add_sentinel(guesses);
  } else {
    const auto [lo, hi] = positive_range(pairwise);
    if (lo > 0.0) {
      const auto grid = geometric_grid(lo * scale / m, scale * hi * (1.0 + search.eps), search.eps);
      guesses.insert(guesses.end(), grid.begin(), grid.end());
    }
  }
  return normalize_candidates(std::move(guesses));
}

Selection fair_flow(const Dataset& ds, const FairnessSpec& spec, const GuessSearch& search,
                    std::uint64_t seed) {
  if (spec.mode != Mode::kDisjoint) throw InfeasibleError("fair-flow needs disjoint constraints");
  validate_spec(ds, spec);
  const FlowPool pool = build_flow_pool(ds, spec, seed);
  const std::vector<double> guesses = fair_flow_guesses(ds, spec, pool, search);
  Selection best = run_guess_search(guesses, SearchGoal::kLargestSuccess, "fair-flow",
                                    [&](double gamma) {
                                      Selection s = fair_flow_probe(ds, spec, pool, gamma);
                                      return ProbeOutcome<Selection>{!s.aborted, std::move(s)};
                                    });
  best.diagnostics.distance_evaluations += pool.evaluations;
  return best;
}

}  // namespace fairdiv
