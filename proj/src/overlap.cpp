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

#include "fairdiv/overlap.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <map>
#include <string>

#include "fairdiv/combinatorics.hpp"
#include "fairdiv/disjoint.hpp"
#include "fairdiv/fair_flow.hpp"
#include "fairdiv/flow_network.hpp"
#include "fairdiv/gmm.hpp"
#include "guess_driver.hpp"

namespace fairdiv {

bool label_set_before(GroupMask a, GroupMask b) {
  const int ca = std::popcount(a);
  const int cb = std::popcount(b);
  if (ca != cb) return ca > cb;
  while (a != 0 && b != 0) {
    const int la = std::countr_zero(a);
    const int lb = std::countr_zero(b);
    if (la != lb) return la < lb;
    a &= a - 1;
    b &= b - 1;
  }
  return false;
}

std::vector<IntersectionClass> partition_into_classes(const Dataset& ds) {
  std::map<GroupMask, std::vector<ElementId>> by_mask;
  for (ElementId u = 0; u < ds.size(); ++u) by_mask[ds.membership(u)].push_back(u);
  std::vector<IntersectionClass> classes;
  for (auto& [mask, members] : by_mask) classes.push_back({mask, std::move(members)});
  std::sort(classes.begin(), classes.end(), [](const IntersectionClass& a, const IntersectionClass& b) {
    return label_set_before(a.labels, b.labels);
  });
  return classes;
}

std::uint64_t sperner_bound(int m) {
  if (m < 0) throw std::invalid_argument("sperner_bound: negative m");
  return binomial(static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(m / 2));
}

std::uint64_t overlap_guess_bound(int m, int k_max) {
  if (m >= 64) return kSaturated;
  const std::uint64_t free_sets = (std::uint64_t{1} << m) - 1 - static_cast<std::uint64_t>(m);
  std::uint64_t total = 1;
  for (std::uint64_t i = 0; i < free_sets; ++i) {
    total = saturating_mul(total, static_cast<std::uint64_t>(k_max) + 1);
  }
  return total;
}

int FlowGuess::total() const {
  int t = 0;
  for (int c : counts) t += c;
  return t;
}

bool FlowGuess::covers(const FairnessSpec& spec) const {
  for (std::size_t g = 0; g < spec.group_count(); ++g) {
    int have = 0;
    for (std::size_t c = 0; c < labels.size(); ++c) {
      if ((labels[c] >> g) & 1U) have += counts[c];
    }
    if (have < spec.counts[g]) return false;
  }
  return true;
}

void for_each_flow_guess(const std::vector<IntersectionClass>& classes, const FairnessSpec& spec,
                         const std::function<bool(const FlowGuess&)>& visit) {
  const int k_max = spec.max_count();
  std::vector<std::size_t> multi;
  std::vector<int> limit;
  std::vector<std::ptrdiff_t> singleton_class(spec.group_count(), -1);
  FlowGuess guess;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    guess.labels.push_back(classes[c].labels);
    guess.counts.push_back(0);
    if (std::popcount(classes[c].labels) >= 2) {
      multi.push_back(c);
      limit.push_back(std::min<int>(k_max, static_cast<int>(classes[c].members.size())));
    } else {
      singleton_class[static_cast<std::size_t>(std::countr_zero(classes[c].labels))] =
          static_cast<std::ptrdiff_t>(c);
    }
  }
  std::vector<int> odometer(multi.size(), 0);
  while (true) {
    bool ok = true;
    for (std::size_t g = 0; g < spec.group_count() && ok; ++g) {
      int covered = 0;
      for (std::size_t i = 0; i < multi.size(); ++i) {
        if ((classes[multi[i]].labels >> g) & 1U) covered += odometer[i];
      }
      const int need = std::max(0, spec.counts[g] - covered);
      const std::ptrdiff_t s = singleton_class[g];
      if (s < 0) {
        ok = need == 0;
      } else if (static_cast<std::size_t>(need) > classes[static_cast<std::size_t>(s)].members.size()) {
        ok = false;
      } else {
        guess.counts[static_cast<std::size_t>(s)] = need;
      }
    }
    if (ok) {
      for (std::size_t i = 0; i < multi.size(); ++i) guess.counts[multi[i]] = odometer[i];
      if (visit(guess)) return;
    }
    // Advance, last position fastest.
    std::size_t pos = multi.size();
    while (pos > 0) {
      --pos;
      if (odometer[pos] < limit[pos]) {
        ++odometer[pos];
        std::fill(odometer.begin() + static_cast<std::ptrdiff_t>(pos) + 1, odometer.end(), 0);
        break;
      }
      if (pos == 0) return;
    }
    if (multi.empty()) return;
  }
}

namespace {

// 0, every pairwise distance (discrete) or a geometric grid over
// [lower_scale * dmin, scale * dmax * (1 + eps)] (continuous), and a sentinel
// at which the separation `sentinel_scale` asks for exceeds every distance, so
// a single element covering all constraints is found when one exists.
std::vector<double> pairwise_guesses(const Dataset& ds, const GuessSearch& search, double scale,
                                     double lower_scale, double sentinel_scale) {
  const std::size_t n = ds.size();
  std::vector<double> guesses{0.0};
  double lo = 0.0;
  double hi = 0.0;
  if (search.kind == GuessSearch::Kind::kDiscrete) {
    const std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n > 0 ? n - 1 : 0) / 2;
    if (pairs > kMaxPairwiseGuesses) {
      throw BudgetError("discrete search would materialize " + std::to_string(pairs) +
                            " pairwise distances (limit " + std::to_string(kMaxPairwiseGuesses) +
                            "); use the continuous search",
                        pairs, kMaxPairwiseGuesses);
    }
    guesses.reserve(pairs + 2);
    for (ElementId a = 0; a < n; ++a) {
      for (ElementId b = a + 1; b < n; ++b) {
        const double d = ds.distance(a, b);
        guesses.push_back(d);
        hi = std::max(hi, d);
      }
    }
  } else {
    for (ElementId a = 0; a < n; ++a) {
      for (ElementId b = a + 1; b < n; ++b) {
        const double d = ds.distance(a, b);
        if (d > 0.0 && (lo == 0.0 || d < lo)) lo = d;
        hi = std::max(hi, d);
      }
    }
    if (lo > 0.0) {
      const auto grid = geometric_grid(lo * lower_scale, hi * scale * (1.0 + search.eps), search.eps);
      guesses.insert(guesses.end(), grid.begin(), grid.end());
    }
  }
  guesses.push_back(hi > 0.0 ? 2.0 * hi * sentinel_scale : 1.0);
  return normalize_candidates(std::move(guesses));
}

FairnessSpec as_overlapping(FairnessSpec spec) {
  spec.mode = Mode::kOverlapping;
  return spec;
}

}  // namespace

Selection fair_swap_overlap_probe(const Dataset& ds, const FairnessSpec& raw_spec, double gamma,
                                  std::uint64_t seed) {
  const FairnessSpec spec = as_overlapping(raw_spec);
  if (ds.group_count() != 2) throw InfeasibleError("fair-swap-overlap needs exactly two groups");
  validate_spec(ds, spec);
  if (!(gamma >= 0.0)) throw std::invalid_argument("fair-swap-overlap: gamma must be >= 0");
  Selection sel;
  sel.algorithm = "fair-swap-overlap";
  sel.gamma_used = gamma;
  sel.probes = 1;
  const double tau = gamma / 4.0;
  const int k_max = spec.max_count();
  if (k_max == 0) {
    finalize_selection(ds, sel);
    return sel;
  }

  // Greedy tau-separated prefix of the bi-colored elements.
  std::vector<ElementId> both;
  for (ElementId u = 0; u < ds.size(); ++u) {
    if (ds.membership(u) == 0b11) both.push_back(u);
  }
  std::vector<ElementId> prefix;
  if (!both.empty()) {
    FarthestFirst ff(ds, both, {});
    prefix.push_back(ff.take(both[seeded_index(seed, both.size())]).element);
    while (prefix.size() < static_cast<std::size_t>(k_max)) {
      const auto next = ff.peek();
      if (!next || !(next->gain >= tau)) break;
      prefix.push_back(ff.take_next().element);
    }
    sel.diagnostics.distance_evaluations += ff.evaluations();
  }
  const auto t = static_cast<int>(prefix.size());
  if (t >= k_max) {
    sel.chosen = prefix;
    finalize_selection(ds, sel);
    return sel;
  }

  // Single-colored elements at distance >= tau from the prefix.
  std::vector<ElementId> rest;
  std::array<int, 2> supply{0, 0};
  for (ElementId u = 0; u < ds.size(); ++u) {
    if (std::find(prefix.begin(), prefix.end(), u) != prefix.end()) continue;
    bool far = true;
    for (ElementId p : prefix) {
      if (ds.distance(u, p) < tau) {
        far = false;
        break;
      }
    }
    if (!far) continue;
    if (ds.membership(u) == 0b11) {
      throw InvariantViolation("fair-swap-overlap: bi-colored element survived the prefix filter");
    }
    rest.push_back(u);
    ++supply[ds.primary_group(u)];
  }
  sel.diagnostics.distance_evaluations += static_cast<std::uint64_t>(ds.size()) * prefix.size();
  const std::array<int, 2> need{std::max(0, spec.counts[0] - t), std::max(0, spec.counts[1] - t)};
  if (supply[0] < need[0] || supply[1] < need[1]) {
    sel.aborted = true;
    finalize_selection(ds, sel);
    return sel;
  }
  SwapResult swap = fair_swap_within(ds, rest, {0, 1}, need, seed);
  sel.diagnostics.distance_evaluations += swap.selection.diagnostics.distance_evaluations;
  sel.chosen = prefix;
  sel.chosen.insert(sel.chosen.end(), swap.selection.chosen.begin(), swap.selection.chosen.end());
  finalize_selection(ds, sel);
  if (sel.chosen.size() > 1 && !(sel.diversity >= tau)) sel.aborted = true;
  return sel;
}

Selection fair_swap_overlap(const Dataset& ds, const FairnessSpec& raw_spec, const GuessSearch& search,
                            std::uint64_t seed) {
  const FairnessSpec spec = as_overlapping(raw_spec);
  if (ds.group_count() != 2) throw InfeasibleError("fair-swap-overlap needs exactly two groups");
  validate_spec(ds, spec);
  const std::vector<double> guesses = pairwise_guesses(ds, search, 1.0, 1.0, 4.0);
  return run_guess_search(guesses, SearchGoal::kLargestSuccess, "fair-swap-overlap",
                          [&](double gamma) {
                            Selection s = fair_swap_overlap_probe(ds, spec, gamma, seed);
                            return ProbeOutcome<Selection>{!s.aborted, std::move(s)};
                          });
}

namespace {

struct OverlapContext {
  std::vector<IntersectionClass> classes;
  double big_m = 1.0;  // Sperner bound as a double
  std::size_t cap = 0; // per-class candidate cap, sum k_i
};

OverlapContext make_context(const Dataset& ds, const FairnessSpec& spec, int m_cap) {
  const int m = static_cast<int>(ds.group_count());
  if (m > m_cap) {
    throw InfeasibleError("fair-flow-overlap: m = " + std::to_string(m) + " exceeds m_cap = " +
                          std::to_string(m_cap) + "; up to " +
                          std::to_string(overlap_guess_bound(m, spec.max_count())) +
                          " flow guesses per gamma (k^(2^m-1-m))");
  }
  OverlapContext ctx;
  ctx.classes = partition_into_classes(ds);
  ctx.big_m = static_cast<double>(sperner_bound(m));
  ctx.cap = static_cast<std::size_t>(spec.total());
  return ctx;
}

Selection probe_with_context(const Dataset& ds, const FairnessSpec& spec, const OverlapContext& ctx,
                             double gamma, std::uint64_t seed) {
  Selection sel;
  sel.algorithm = "fair-flow-overlap";
  sel.gamma_used = gamma;
  sel.probes = 1;
  if (spec.total() == 0) {
    finalize_selection(ds, sel);
    return sel;
  }
  const double d2 = gamma / (3.0 * ctx.big_m - 1.0);
  const double d1 = ctx.big_m * d2;
  const auto& classes = ctx.classes;

  // Candidates per class, larger label sets first.
  std::vector<std::vector<ElementId>> z(classes.size());
  for (std::size_t c = 0; c < classes.size(); ++c) {
    std::vector<ElementId> initial;
    for (std::size_t p = 0; p < c; ++p) {
      const GroupMask lp = classes[p].labels;
      if (lp != classes[c].labels && (lp & classes[c].labels) == classes[c].labels) {
        initial.insert(initial.end(), z[p].begin(), z[p].end());
      }
    }
    FarthestFirst ff(ds, classes[c].members, initial);
    while (z[c].size() < ctx.cap && ff.remaining() > 0) {
      if (!ff.has_reference_points()) {
        z[c].push_back(ff.take(ff.universe()[seeded_index(seed, ff.universe().size())]).element);
        continue;
      }
      const auto next = ff.peek();
      if (!(next->gain >= d1)) break;
      z[c].push_back(ff.take_next().element);
    }
    sel.diagnostics.distance_evaluations += ff.evaluations();
  }

  std::vector<ElementId> points;
  std::vector<std::size_t> slot;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    for (ElementId u : z[c]) {
      points.push_back(u);
      slot.push_back(c);
    }
  }
  const std::vector<std::size_t> comp =
      threshold_components(ds, points, d2, &sel.diagnostics.distance_evaluations);
  const std::size_t comp_count = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;

  // Components are small and hold no two points of nested label sets.
  const double bound = (ctx.big_m - 1.0) * d2;
  for (std::size_t a = 0; a < points.size(); ++a) {
    for (std::size_t b = a + 1; b < points.size(); ++b) {
      if (comp[a] != comp[b]) continue;
      const GroupMask la = classes[slot[a]].labels;
      const GroupMask lb = classes[slot[b]].labels;
      if ((la & lb) == la || (la & lb) == lb) {
        throw InvariantViolation("fair-flow-overlap: component holds points of nested label sets");
      }
      const double d = ds.distance(points[a], points[b]);
      ++sel.diagnostics.distance_evaluations;
      if (!(d < bound + bound * 1e-9)) {
        throw InvariantViolation("fair-flow-overlap: component diameter " + std::to_string(d) +
                                 " reaches (M-1)*d2 = " + std::to_string(bound));
      }
    }
  }
  ++sel.diagnostics.component_checks;

  std::vector<std::pair<std::size_t, std::size_t>> incidences;
  for (std::size_t p = 0; p < points.size(); ++p) incidences.emplace_back(slot[p], comp[p]);
  std::sort(incidences.begin(), incidences.end());
  incidences.erase(std::unique(incidences.begin(), incidences.end()), incidences.end());

  bool found = false;
  for_each_flow_guess(classes, spec, [&](const FlowGuess& guess) {
    ++sel.diagnostics.guesses_tried;
    if (static_cast<std::size_t>(guess.total()) > comp_count) return false;
    for (std::size_t c = 0; c < classes.size(); ++c) {
      if (static_cast<std::size_t>(guess.counts[c]) > z[c].size()) return false;
    }
    AssignmentProblem problem;
    problem.class_capacity.assign(guess.counts.begin(), guess.counts.end());
    problem.component_count = comp_count;
    problem.incidences = incidences;
    const Assignment flow = solve_assignment(problem);
    ++sel.diagnostics.flow_networks;
    if (flow.value < guess.total()) return false;
    for (const auto& [c, j] : flow.used) {
      for (std::size_t p = 0; p < points.size(); ++p) {
        if (slot[p] == c && comp[p] == j) {
          sel.chosen.push_back(points[p]);
          break;
        }
      }
    }
    found = true;
    return true;
  });
  sel.aborted = !found;
  finalize_selection(ds, sel);
  if (found) {
    for (std::size_t g = 0; g < spec.group_count(); ++g) {
      if (sel.per_group_counts[g] < spec.counts[g]) {
        throw InvariantViolation("fair-flow-overlap: selection misses a group constraint");
      }
    }
    if (sel.chosen.size() > 1 && !(sel.diversity >= d2)) {
      throw InvariantViolation("fair-flow-overlap: selection diversity below gamma/(3M-1)");
    }
  }
  return sel;
}

}  // namespace

Selection fair_flow_overlap_probe(const Dataset& ds, const FairnessSpec& raw_spec, double gamma,
                                  const OverlapFlowOptions& options) {
  const FairnessSpec spec = as_overlapping(raw_spec);
  validate_spec(ds, spec);
  if (!(gamma >= 0.0)) throw std::invalid_argument("fair-flow-overlap: gamma must be >= 0");
  const OverlapContext ctx = make_context(ds, spec, options.m_cap);
  return probe_with_context(ds, spec, ctx, gamma, options.seed);
}

Selection fair_flow_overlap(const Dataset& ds, const FairnessSpec& raw_spec, const GuessSearch& search,
                            const OverlapFlowOptions& options) {
  const FairnessSpec spec = as_overlapping(raw_spec);
  validate_spec(ds, spec);
  const OverlapContext ctx = make_context(ds, spec, options.m_cap);
  const double scale = 3.0 * ctx.big_m - 1.0;
  const std::vector<double> guesses = pairwise_guesses(ds, search, scale, scale / ctx.big_m, scale);
  return run_guess_search(guesses, SearchGoal::kLargestSuccess, "fair-flow-overlap",
                          [&](double gamma) {
                            Selection s = probe_with_context(ds, spec, ctx, gamma, options.seed);
                            return ProbeOutcome<Selection>{!s.aborted, std::move(s)};
                          });
}

}  // namespace fairdiv
