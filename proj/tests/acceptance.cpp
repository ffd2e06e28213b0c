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

// Acceptance run: randomized approximation-ratio checks against the exact
// oracle, flow audits, a scaling measurement and a determinism replay. Prints
// one PASS/FAIL line per criterion and exits non-zero if any fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fairdiv/bench.hpp"
#include "fairdiv/clustering.hpp"
#include "fairdiv/disjoint.hpp"
#include "fairdiv/fair_flow.hpp"
#include "fairdiv/flow_network.hpp"
#include "fairdiv/io.hpp"
#include "fairdiv/oracle.hpp"
#include "fairdiv/overlap.hpp"
#include "fairdiv/solve.hpp"

using namespace fairdiv;

namespace {

constexpr double kSlack = 1e-9;

// Result records written by a criterion run, compared across replays.
using Log = std::vector<std::string>;

struct Verdict {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

const RecordOptions kNoTiming{false, 0.0};

// Uniform integer in [lo, hi].
std::size_t draw(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
}

Dataset instance(std::uint64_t suite, int index, std::size_t n, std::size_t m, double overlap) {
  InstanceParams p;
  p.n = n;
  p.m = m;
  p.overlap = overlap;
  p.seed = instance_seed(suite, static_cast<std::uint64_t>(index));
  return generate_instance(p);
}

bool meets(const Dataset& ds, const FairnessSpec& spec, const std::vector<ElementId>& set) {
  const auto counts = group_counts(ds, set);
  for (std::size_t g = 0; g < counts.size(); ++g) {
    if (spec.mode == Mode::kDisjoint ? counts[g] != spec.counts[g] : counts[g] < spec.counts[g]) return false;
  }
  return spec.mode == Mode::kDisjoint ? static_cast<int>(set.size()) == spec.total()
                                      : static_cast<int>(set.size()) <= spec.total();
}

std::string describe(int index, double achieved, double opt) {
  std::ostringstream s;
  s << "instance " << index << ": achieved " << achieved << ", optimum " << opt;
  return s.str();
}

void check_ratio(Verdict& v, int index, double achieved, double opt, double bound, double& worst) {
  const double ratio = objective_ratio(achieved, opt);
  worst = std::min(worst, ratio);
  if (!(ratio >= bound - kSlack)) v.fail(describe(index, achieved, opt));
}

std::string ratio_summary(int count, double worst, double bound) {
  std::ostringstream s;
  s << count << " instances, worst ratio " << worst << " (bound " << bound << ")";
  return s.str();
}

// Criterion 1: unconstrained greedy is a 1/2-approximation.
Verdict gmm_half(Log& log) {
  Verdict v;
  std::mt19937_64 rng(101);
  double worst = 1.0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = draw(rng, 5, 12);
    const std::size_t k = draw(rng, 2, 5);
    const Dataset ds = instance(1, i, n, 1, 0.0);
    const Selection s = gmm_selection(ds, k, static_cast<std::uint64_t>(i));
    const OracleResult opt = oracle_maxmin(ds, k);
    check_ratio(v, i, s.diversity, opt.opt_value, 0.5, worst);
    log.push_back(selection_record(ds, s, kNoTiming).dump());
  }
  if (v.pass) v.detail = ratio_summary(200, worst, 0.5);
  return v;
}

// Criterion 2: two-group swap, 1/4, exact counts.
Verdict swap_quarter(Log& log) {
  Verdict v;
  std::mt19937_64 rng(202);
  double worst = 1.0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = draw(rng, 4, 12);
    const Dataset ds = instance(2, i, n, 2, 0.0);
    const FairnessSpec spec = random_counts(ds, Mode::kDisjoint, 1, 4, instance_seed(22, i));
    const Selection s = fair_swap(ds, spec, static_cast<std::uint64_t>(i));
    if (s.per_group_counts != spec.counts) v.fail("instance " + std::to_string(i) + ": wrong group counts");
    check_ratio(v, i, s.diversity, oracle_fair_maxmin(ds, spec).opt_value, 0.25, worst);
    log.push_back(selection_record(ds, s, kNoTiming).dump());
  }
  if (v.pass) v.detail = ratio_summary(200, worst, 0.25);
  return v;
}

// Criterion 3: flow-based selection for m = 3, 4.
Verdict flow_bound(Log& log, std::uint64_t& networks) {
  Verdict v;
  std::mt19937_64 rng(303);
  std::ostringstream summary;
  int component_checks = 0;
  for (std::size_t m : {3, 4}) {
    double worst = 1.0;
    const double bound = 1.0 / (3.0 * static_cast<double>(m) - 1.0);
    for (int i = 0; i < 100; ++i) {
      const std::size_t n = draw(rng, m + 1, 12);
      const Dataset ds = instance(3 + m, i, n, m, 0.0);
      const FairnessSpec spec = random_counts(ds, Mode::kDisjoint, 1, 2, instance_seed(33, i));
      try {
        const double opt = oracle_fair_maxmin(ds, spec).opt_value;
        const Selection s = fair_flow(ds, spec, GuessSearch::discrete(), static_cast<std::uint64_t>(i));
        if (!meets(ds, spec, s.chosen)) v.fail("instance " + std::to_string(i) + ": constraints not met");
        check_ratio(v, i, s.diversity, opt, bound, worst);
        const Selection at_opt = fair_flow_probe(ds, spec, opt, static_cast<std::uint64_t>(i));
        if (at_opt.aborted) v.fail("instance " + std::to_string(i) + ": probe aborted at the optimum");
        component_checks += s.diagnostics.component_checks + at_opt.diagnostics.component_checks;
        networks += static_cast<std::uint64_t>(s.diagnostics.flow_networks + at_opt.diagnostics.flow_networks);
        log.push_back(selection_record(ds, s, kNoTiming).dump());
        log.push_back(selection_record(ds, at_opt, kNoTiming).dump());
      } catch (const InvariantViolation& e) {
        v.fail("instance " + std::to_string(i) + ": " + e.what());
      }
    }
    summary << "m=" << m << " worst ratio " << worst << " (bound " << bound << "); ";
  }
  summary << component_checks << " component checks passed";
  if (v.pass) v.detail = summary.str();
  return v;
}

// Criterion 4: per-group greedy plus exhaustive search, 1/5. The exactness
// clause is checked as stated (k * m >= n) and, separately, on instances whose
// greedy pools hold every element; only the former decides the verdict.
Verdict fair_gmm_fifth(Log& log) {
  Verdict v;
  std::mt19937_64 rng(404);
  double worst = 1.0;
  int stated_cases = 0, stated_misses = 0, covered_cases = 0, covered_misses = 0;
  std::string first_miss;
  for (int i = 0; i < 100; ++i) {
    const std::size_t m = draw(rng, 1, 3);
    const std::size_t n = draw(rng, 6, 15);
    const Dataset ds = instance(4, i, n, m, 0.0);
    const int k_max = static_cast<int>(6 / m);
    const FairnessSpec spec = random_counts(ds, Mode::kDisjoint, 1, k_max, instance_seed(44, i));
    const Selection s = fair_gmm(ds, spec, {static_cast<std::uint64_t>(i), kDefaultBudget});
    const double opt = oracle_fair_maxmin(ds, spec).opt_value;
    if (s.per_group_counts != spec.counts) v.fail("instance " + std::to_string(i) + ": wrong group counts");
    check_ratio(v, i, s.diversity, opt, 0.2, worst);
    const auto k = static_cast<std::size_t>(spec.total());
    if (k * m >= n) {
      ++stated_cases;
      if (s.diversity != opt) {
        ++stated_misses;
        if (first_miss.empty()) first_miss = describe(i, s.diversity, opt);
      }
    }
    bool covered = true;
    for (std::size_t g = 0; g < m; ++g) covered = covered && ds.members(g).size() <= k;
    if (covered) {
      ++covered_cases;
      if (s.diversity != opt) ++covered_misses;
    }
    log.push_back(selection_record(ds, s, kNoTiming).dump());
  }
  std::ostringstream d;
  d << ratio_summary(100, worst, 0.2) << "; exact when km >= n: " << stated_cases - stated_misses << "/"
    << stated_cases;
  if (stated_misses > 0) d << " (" << first_miss << "; a group larger than k leaves points outside the greedy pools)";
  d << "; exact when the pools cover every element: " << covered_cases - covered_misses << "/" << covered_cases;
  if (covered_misses > 0) v.fail("pool-covering instance not solved exactly");
  if (v.pass && stated_misses > 0) v.fail(d.str());
  if (v.pass) v.detail = d.str();
  return v;
}

// Criterion 5: overlapping two-group swap, 1/4.
Verdict overlap_swap_quarter(Log& log) {
  Verdict v;
  std::mt19937_64 rng(505);
  double worst = 1.0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = draw(rng, 4, 10);
    const Dataset ds = instance(5, i, n, 2, 0.3);
    const FairnessSpec spec = random_counts(ds, Mode::kOverlapping, 1, 3, instance_seed(55, i));
    try {
      const Selection s = fair_swap_overlap(ds, spec, GuessSearch::discrete(), static_cast<std::uint64_t>(i));
      if (!meets(ds, spec, s.chosen)) v.fail("instance " + std::to_string(i) + ": constraints not met");
      check_ratio(v, i, s.diversity, oracle_fair_maxmin(ds, spec).opt_value, 0.25, worst);
      log.push_back(selection_record(ds, s, kNoTiming).dump());
    } catch (const Error& e) {
      v.fail("instance " + std::to_string(i) + ": " + e.what());
    }
  }
  if (v.pass) v.detail = ratio_summary(100, worst, 0.25);
  return v;
}

// Criterion 6: overlapping flow-based selection, m = 3, 1/8.
Verdict overlap_flow_eighth(Log& log, std::uint64_t& networks) {
  Verdict v;
  const std::vector<std::uint64_t> expected{2, 3, 6, 10};
  for (int m = 2; m <= 5; ++m) {
    if (sperner_bound(m) != expected[static_cast<std::size_t>(m - 2)]) v.fail("antichain bound table mismatch");
  }
  std::mt19937_64 rng(606);
  double worst = 1.0;
  int component_checks = 0;
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = draw(rng, 4, 10);
    const Dataset ds = instance(6, i, n, 3, 0.3);
    const FairnessSpec spec = random_counts(ds, Mode::kOverlapping, 1, 2, instance_seed(66, i));
    try {
      const Selection s = fair_flow_overlap(ds, spec);
      if (!meets(ds, spec, s.chosen)) v.fail("instance " + std::to_string(i) + ": constraints not met");
      check_ratio(v, i, s.diversity, oracle_fair_maxmin(ds, spec).opt_value, 1.0 / 8.0, worst);
      component_checks += s.diagnostics.component_checks;
      networks += static_cast<std::uint64_t>(s.diagnostics.flow_networks);
      log.push_back(selection_record(ds, s, kNoTiming).dump());
    } catch (const InvariantViolation& e) {
      v.fail("instance " + std::to_string(i) + ": " + e.what());
    }
  }
  if (v.pass) {
    v.detail = ratio_summary(50, worst, 0.125) + ", " + std::to_string(component_checks) +
               " component checks passed, antichain table 2,3,6,10";
  }
  return v;
}

// Criterion 7: fair k-center within 3x; probes stay within 3 gamma.
Verdict kcenter_three(Log& log, std::uint64_t& networks) {
  Verdict v;
  std::mt19937_64 rng(707);
  double worst = 0.0;
  int probes_checked = 0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t m = draw(rng, 1, 3);
    const std::size_t n = draw(rng, 4, 12);
    const Dataset ds = instance(7, i, n, m, 0.0);
    const FairnessSpec spec = random_counts(ds, Mode::kDisjoint, 1, 3, instance_seed(77, i));
    try {
      const ClusterResult r = fair_kcenter(ds, spec, GuessSearch::discrete(), static_cast<std::uint64_t>(i));
      const double opt = oracle_fair_kcenter(ds, spec).opt_value;
      if (r.per_group_counts != spec.counts) v.fail("instance " + std::to_string(i) + ": wrong group counts");
      if (!(r.radius <= 3.0 * opt + kSlack)) v.fail(describe(i, r.radius, opt));
      if (opt > 0.0) worst = std::max(worst, r.radius / opt);
      networks += static_cast<std::uint64_t>(r.diagnostics.flow_networks);
      log.push_back(cluster_record(ds, r, kNoTiming).dump());
      for (ElementId a = 0; a < ds.size(); ++a) {
        for (ElementId b = a + 1; b < ds.size(); b += 3) {
          const double gamma = ds.distance(a, b);
          const ClusterResult p = fair_kcenter_probe(ds, spec, gamma, static_cast<std::uint64_t>(i));
          networks += static_cast<std::uint64_t>(p.diagnostics.flow_networks);
          if (p.aborted) continue;
          ++probes_checked;
          if (!(p.radius <= 3.0 * gamma * (1.0 + kSlack) + kSlack)) {
            v.fail("instance " + std::to_string(i) + ": probe radius above 3 gamma");
          }
        }
      }
    } catch (const InvariantViolation& e) {
      v.fail("instance " + std::to_string(i) + ": " + e.what());
    }
  }
  if (v.pass) {
    std::ostringstream s;
    s << "100 instances, worst radius ratio " << worst << " (bound 3), " << probes_checked
      << " non-aborted probes within 3 gamma";
    v.detail = s.str();
  }
  return v;
}

// Criterion 8: time at n = 1e5 is at most 15x the time at n = 1e4 (fastest
// of several runs at each size).
Verdict linear_scaling() {
  Verdict v;
  ScalingConfig config;
  config.algorithms = {Algorithm::kFairSwap, Algorithm::kFairFlow};
  config.sizes = {10'000, 100'000};
  config.m = 3;
  config.k = 20;
  config.repetitions = 7;
  const auto records = run_scaling_bench(config);
  std::ostringstream s;
  bool within = true;
  for (std::size_t i = 0; i + 1 < records.size(); i += 2) {
    const auto& small = records[i];
    const auto& large = records[i + 1];
    const double ratio = large.best_ms / std::max(small.best_ms, 1e-3);
    const double evals = static_cast<double>(large.distance_evaluations) /
                         static_cast<double>(std::max<std::uint64_t>(small.distance_evaluations, 1));
    s << small.algorithm << " (m=" << small.m << ") " << small.best_ms << " ms -> " << large.best_ms
      << " ms, time x" << ratio << ", distance evaluations x" << evals << "; ";
    within = within && ratio <= 15.0;
  }
  v.detail = s.str();
  v.pass = within;
  return v;
}

}  // namespace

int main() {
  struct Line {
    int id;
    std::string name;
    Verdict verdict;
    double seconds;
    double limit;  // 0: no time limit
  };
  std::vector<Line> lines;
  Log first;
  std::uint64_t networks = 0;
  reset_flow_audit();

  auto timed = [&](int id, const std::string& name, double limit, const std::function<Verdict()>& f) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v = f();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (limit > 0.0 && secs > limit) {
      std::ostringstream s;
      s << "took " << secs << " s, limit " << limit << " s";
      v.fail(s.str());
    }
    lines.push_back({id, name, v, secs, limit});
  };

  const std::vector<std::function<Verdict(Log&, std::uint64_t&)>> ratio_runs{
      [](Log& l, std::uint64_t&) { return gmm_half(l); },
      [](Log& l, std::uint64_t&) { return swap_quarter(l); },
      [](Log& l, std::uint64_t& n) { return flow_bound(l, n); },
      [](Log& l, std::uint64_t&) { return fair_gmm_fifth(l); },
      [](Log& l, std::uint64_t&) { return overlap_swap_quarter(l); },
      [](Log& l, std::uint64_t& n) { return overlap_flow_eighth(l, n); },
      [](Log& l, std::uint64_t& n) { return kcenter_three(l, n); },
  };
  const std::vector<std::string> names{
      "greedy 1/2 bound",           "two-group swap 1/4 bound",     "flow 1/(3m-1) bound",
      "per-group greedy 1/5 bound", "overlapping swap 1/4 bound",   "overlapping flow 1/8 bound",
      "fair k-center 3x bound"};
  const std::vector<double> limits{10, 10, 60, 60, 60, 120, 60};
  for (std::size_t c = 0; c < ratio_runs.size(); ++c) {
    timed(static_cast<int>(c + 1), names[c], limits[c], [&] { return ratio_runs[c](first, networks); });
  }

  timed(8, "linear scaling in n", 0, linear_scaling);

  timed(9, "flow integrality and conservation", 0, [&] {
    Verdict v;
    const FlowAudit audit = flow_audit();
    if (audit.failures != 0) v.fail(std::to_string(audit.failures) + " networks failed the flow check");
    if (audit.networks < networks) v.fail("fewer audited networks than solvers reported");
    if (networks == 0) v.fail("no flow networks were built");
    if (v.pass) {
      v.detail = std::to_string(audit.networks) + " networks, " + std::to_string(audit.edges) +
                 " edges checked, 0 failures";
    }
    return v;
  });

  timed(10, "deterministic replay", 0, [&] {
    Verdict v;
    Log second;
    std::uint64_t ignored = 0;
    for (const auto& run : ratio_runs) (void)run(second, ignored);
    if (second.size() != first.size()) {
      v.fail("replay produced a different number of records");
      return v;
    }
    for (std::size_t i = 0; i < first.size(); ++i) {
      if (first[i] != second[i]) {
        v.fail("record " + std::to_string(i) + " differs on replay");
        return v;
      }
    }
    v.detail = std::to_string(first.size()) + " records byte-identical across two runs";
    return v;
  });

  bool all = true;
  for (const auto& l : lines) {
    all = all && l.verdict.pass;
    std::cout << (l.verdict.pass ? "[PASS]" : "[FAIL]") << " criterion " << l.id << ": " << l.name << " - "
              << l.verdict.detail << " [" << l.seconds << " s]\n";
  }
  std::cout << (all ? "all criteria passed" : "some criteria failed") << "\n";
  return all ? 0 : 1;
}
