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

#include "fairdiv/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

namespace fairdiv {

Dataset generate_instance(const InstanceParams& p) {
  if (p.m == 0 || p.m > kMaxGroups || p.n < p.m || p.dim == 0) {
    throw std::invalid_argument("generate_instance: need 1 <= m <= n, m <= 64, dim >= 1");
  }
  std::mt19937_64 rng(p.seed);
  std::uniform_real_distribution<double> unit(0.0, 100.0);
  PointMatrix pm;
  pm.rows = p.n;
  pm.dim = p.dim;
  pm.values.resize(p.n * p.dim);
  if (p.layout == Layout::kUniform) {
    for (double& v : pm.values) v = unit(rng);
  } else {
    const std::size_t c = std::max<std::size_t>(1, p.clusters);
    std::vector<double> centers(c * p.dim);
    for (double& v : centers) v = unit(rng);
    std::normal_distribution<double> spread(0.0, 2.0);
    std::uniform_int_distribution<std::size_t> pick(0, c - 1);
    for (std::size_t i = 0; i < p.n; ++i) {
      const std::size_t which = pick(rng);
      for (std::size_t j = 0; j < p.dim; ++j) pm.values[i * p.dim + j] = std::clamp(centers[which * p.dim + j] + spread(rng), 0.0, 100.0);
    }
  }
  std::uniform_int_distribution<std::size_t> group(0, p.m - 1);
  std::bernoulli_distribution extra(p.overlap);
  std::vector<std::vector<std::string>> labels(p.n);
  for (std::size_t i = 0; i < p.n; ++i) {
    const std::size_t primary = i < p.m ? i : group(rng);
    for (std::size_t g = 0; g < p.m; ++g) {
      if (g == primary || (p.overlap > 0.0 && extra(rng))) labels[i].push_back("g" + std::to_string(g));
    }
  }
  return Dataset::from_points(pm, labels);
}

std::uint64_t instance_seed(std::uint64_t suite_seed, std::uint64_t index) {
  // splitmix64 over the pair.
  std::uint64_t z = suite_seed * 0x9E3779B97F4A7C15ULL + index + 0x632BE59BD9B4E019ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

FairnessSpec random_counts(const Dataset& ds, Mode mode, int k_min, int k_max, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  FairnessSpec spec;
  spec.mode = mode;
  for (std::size_t g = 0; g < ds.group_count(); ++g) {
    const int hi = std::min<int>(k_max, static_cast<int>(ds.members(g).size()));
    const int lo = std::min(k_min, hi);
    spec.counts.push_back(std::uniform_int_distribution<int>(lo, hi)(rng));
  }
  if (spec.total() == 0) spec.counts[0] = 1;
  return spec;
}

double objective_ratio(double achieved, double opt) {
  if (std::isinf(achieved) && std::isinf(opt)) return 1.0;
  if (opt == 0.0) return achieved == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  return achieved / opt;
}

bool ratio_within(Algorithm a, double achieved, double opt, double bound) {
  if (is_clustering(a)) return achieved <= bound * opt + 1e-9;
  if (std::isinf(opt)) return std::isinf(achieved);
  return achieved >= bound * opt - 1e-9;
}

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

BenchReport run_ratio_bench(const BenchConfig& config) {
  BenchReport report;
  for (int i = 0; i < config.instances; ++i) {
    const std::uint64_t seed = instance_seed(config.seed, static_cast<std::uint64_t>(i));
    std::mt19937_64 rng(seed);
    InstanceParams params;
    params.n = std::uniform_int_distribution<std::size_t>(config.n_min, config.n_max)(rng);
    params.m = config.m;
    params.dim = config.dim;
    params.layout = config.layout;
    params.overlap = config.overlap;
    params.seed = rng();
    const Dataset ds = generate_instance(params);
    const std::uint64_t count_seed = rng();
    for (Algorithm a : config.algorithms) {
      BenchRecord rec;
      rec.index = i;
      rec.n = ds.size();
      rec.m = ds.group_count();
      rec.algorithm = algorithm_name(a);
      const FairnessSpec spec = random_counts(ds, constraint_mode(a), config.k_min, config.k_max, count_seed);
      rec.counts = spec.counts;
      try {
        const auto start = std::chrono::steady_clock::now();
        const SolveResult result = solve(a, ds, spec, config.solve);
        rec.wall_ms = elapsed_ms(start);
        OracleResult opt;
        if (a == Algorithm::kGmm) {
          opt = oracle_maxmin(ds, static_cast<std::size_t>(spec.total()), config.oracle_budget);
        } else if (is_clustering(a)) {
          opt = oracle_fair_kcenter(ds, spec, config.oracle_budget);
        } else {
          opt = oracle_fair_maxmin(ds, spec, config.oracle_budget);
        }
        if (const auto* sel = std::get_if<Selection>(&result)) {
          rec.achieved = sel->diversity;
          rec.probes = sel->probes;
        } else {
          const auto& cr = std::get<ClusterResult>(result);
          rec.achieved = cr.radius;
          rec.probes = cr.probes;
        }
        rec.oracle_opt = opt.opt_value;
        rec.ratio = objective_ratio(rec.achieved, rec.oracle_opt);
        rec.within_bound =
            ratio_within(a, rec.achieved, rec.oracle_opt, approximation_bound(a, ds.group_count(), config.solve.search));
      } catch (const Error& e) {
        rec.error = e.what();
      }
      report.records.push_back(std::move(rec));
    }
  }
  for (Algorithm a : config.algorithms) {
    BenchSummary s;
    s.algorithm = algorithm_name(a);
    s.bound = approximation_bound(a, config.m, config.solve.search);
    double sum = 0.0;
    bool first = true;
    for (const auto& r : report.records) {
      if (r.algorithm != s.algorithm) continue;
      if (!r.error.empty()) {
        ++s.errors;
        continue;
      }
      ++s.count;
      sum += r.ratio;
      s.min_ratio = first ? r.ratio : std::min(s.min_ratio, r.ratio);
      s.max_ratio = first ? r.ratio : std::max(s.max_ratio, r.ratio);
      first = false;
      s.all_within = s.all_within && r.within_bound;
    }
    s.mean_ratio = s.count > 0 ? sum / s.count : 0.0;
    report.summaries.push_back(s);
  }
  return report;
}

std::vector<ScalingRecord> run_scaling_bench(const ScalingConfig& config) {
  std::vector<ScalingRecord> out;
  for (Algorithm a : config.algorithms) {
    const std::size_t m = a == Algorithm::kFairSwap || a == Algorithm::kFairSwapOverlap ? 2 : config.m;
    for (std::size_t idx = 0; idx < config.sizes.size(); ++idx) {
      InstanceParams params;
      params.n = config.sizes[idx];
      params.m = m;
      params.layout = config.layout;
      params.seed = instance_seed(config.seed, idx);
      const Dataset ds = generate_instance(params);
      FairnessSpec spec;
      spec.mode = constraint_mode(a);
      for (std::size_t g = 0; g < m; ++g) {
        spec.counts.push_back(config.k / static_cast<int>(m) + (static_cast<int>(g) < config.k % static_cast<int>(m) ? 1 : 0));
      }
      ScalingRecord rec;
      rec.algorithm = algorithm_name(a);
      rec.n = params.n;
      rec.m = m;
      rec.k = config.k;
      for (int rep = 0; rep < std::max(1, config.repetitions); ++rep) {
        const auto start = std::chrono::steady_clock::now();
        const SolveResult result = solve(a, ds, spec, {});
        const double ms = elapsed_ms(start);
        rec.best_ms = rep == 0 ? ms : std::min(rec.best_ms, ms);
        rec.distance_evaluations = std::visit([](const auto& r) { return r.diagnostics.distance_evaluations; }, result);
      }
      out.push_back(rec);
    }
  }
  return out;
}

namespace {

nlohmann::json finite_or_null(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

}  // namespace

nlohmann::json bench_to_json(const BenchReport& report, bool include_timing) {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& r : report.records) {
    nlohmann::json j{{"index", r.index}, {"n", r.n}, {"m", r.m}, {"k", r.counts},
                     {"algorithm", r.algorithm}};
    if (!r.error.empty()) {
      j["error"] = r.error;
    } else {
      j["achieved"] = finite_or_null(r.achieved);
      j["oracle_opt"] = finite_or_null(r.oracle_opt);
      j["ratio"] = finite_or_null(r.ratio);
      j["within_bound"] = r.within_bound;
      j["probes"] = r.probes;
    }
    j["wall_ms"] = include_timing ? r.wall_ms : 0.0;
    records.push_back(std::move(j));
  }
  nlohmann::json summaries = nlohmann::json::array();
  for (const auto& s : report.summaries) {
    summaries.push_back({{"algorithm", s.algorithm},
                         {"count", s.count},
                         {"errors", s.errors},
                         {"bound", s.bound},
                         {"min_ratio", finite_or_null(s.min_ratio)},
                         {"mean_ratio", finite_or_null(s.mean_ratio)},
                         {"max_ratio", finite_or_null(s.max_ratio)},
                         {"all_within_bound", s.all_within}});
  }
  return {{"records", records}, {"summary", summaries}};
}

nlohmann::json scaling_to_json(const std::vector<ScalingRecord>& records) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : records) {
    out.push_back({{"algorithm", r.algorithm},
                   {"n", r.n},
                   {"m", r.m},
                   {"k", r.k},
                   {"best_ms", r.best_ms},
                   {"distance_evaluations", r.distance_evaluations}});
  }
  return out;
}

}  // namespace fairdiv
