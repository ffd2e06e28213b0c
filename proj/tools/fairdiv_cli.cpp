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

// Command-line front end.
//
// Exit codes: 0 ok, 2 parse/configuration error, 3 infeasible constraints,
// 4 budget refusal, 5 internal invariant violation.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fairdiv/bench.hpp"
#include "fairdiv/io.hpp"
#include "fairdiv/oracle.hpp"
#include "fairdiv/solve.hpp"

namespace {

using fairdiv::ParseError;

enum ExitCode { kOk = 0, kUnexpected = 1, kParse = 2, kInfeasible = 3, kBudget = 4, kInvariant = 5 };

struct InputOptions {
  std::string input;
  std::string labels;
  std::string metric = "euclidean";
};

struct SearchOptions {
  std::string search = "discrete";
  double eps = 0.1;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> budget;
  std::optional<int> m_cap;
};

void add_input(CLI::App* app, InputOptions& in) {
  app->add_option("-i,--input", in.input, "Points CSV, or the distance matrix CSV with --metric precomputed")
      ->required();
  app->add_option("--labels", in.labels, "id,groups sidecar for a distance matrix");
  app->add_option("--metric", in.metric, "euclidean | manhattan | precomputed");
}

void add_search(CLI::App* app, SearchOptions& s) {
  app->add_option("--search", s.search, "discrete | continuous");
  app->add_option("--eps", s.eps, "Continuous grid ratio is 1 + eps");
  app->add_option("--seed", s.seed, "Seed for the first greedy pick");
  app->add_option("--budget", s.budget, "Exhaustive-search budget (env FAIRDIV_BUDGET)");
  app->add_option("--m-cap", s.m_cap, "Largest group count for fair-flow-overlap (env FAIRDIV_M_CAP)");
}

fairdiv::Dataset load(const InputOptions& in) {
  if (in.metric == "precomputed") {
    if (in.labels.empty()) throw ParseError("--metric precomputed needs --labels");
    return fairdiv::load_matrix_csv(in.input, in.labels);
  }
  if (!in.labels.empty()) throw ParseError("--labels is only used with --metric precomputed");
  return fairdiv::load_points_csv(in.input, fairdiv::parse_metric(in.metric));
}

template <class T>
std::optional<T> env_number(const char* name) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  try {
    std::size_t used = 0;
    const long long v = std::stoll(raw, &used);
    if (used != std::string(raw).size() || v < 0) throw std::invalid_argument(raw);
    return static_cast<T>(v);
  } catch (const std::exception&) {
    throw ParseError(std::string(name) + " is not a non-negative integer: '" + raw + "'");
  }
}

fairdiv::SolveOptions solve_options(const SearchOptions& s) {
  fairdiv::SolveOptions o;
  if (s.search == "discrete") {
    o.search = fairdiv::GuessSearch::discrete();
  } else if (s.search == "continuous") {
    if (!(s.eps > 0.0)) throw ParseError("--eps must be positive");
    o.search = fairdiv::GuessSearch::continuous(s.eps);
  } else {
    throw ParseError("unknown search '" + s.search + "'");
  }
  o.seed = s.seed;
  o.budget = s.budget.value_or(env_number<std::uint64_t>("FAIRDIV_BUDGET").value_or(fairdiv::kDefaultBudget));
  o.m_cap = s.m_cap.value_or(env_number<int>("FAIRDIV_M_CAP").value_or(fairdiv::kDefaultMCap));
  return o;
}

void emit(const nlohmann::json& record, const std::string& output) {
  const std::string text = record.dump(2) + "\n";
  if (output.empty() || output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(output);
  if (!out) throw ParseError(output + ": cannot open for writing");
  out << text;
}

double since_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> sizes;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      sizes.push_back(static_cast<std::size_t>(std::stoull(item)));
    } catch (const std::exception&) {
      throw ParseError("bad size '" + item + "' in --sizes");
    }
  }
  if (sizes.empty()) throw ParseError("--sizes is empty");
  return sizes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fair max-min diversification and fair k-center"};
  app.require_subcommand(1);

  InputOptions in;
  SearchOptions search;
  std::string output;
  std::string constraints;
  std::string algorithm;
  std::optional<int> k;
  bool no_timing = false;

  auto* select = app.add_subcommand("select", "Run a solver on a dataset");
  add_input(select, in);
  add_search(select, search);
  select->add_option("-a,--algorithm", algorithm,
                     "gmm | fair-swap | fair-gmm | fair-flow | fair-swap-overlap | fair-flow-overlap | "
                     "fair-kcenter | oracle")
      ->required();
  select->add_option("-c,--constraints", constraints, "Per-group counts, e.g. \"a=3,b=2\"");
  select->add_option("-k,--k", k, "Selection size for gmm (default: constraint total)");
  select->add_option("-o,--output", output, "Result file (default stdout)");
  select->add_flag("--no-timing", no_timing, "Write wall_ms as 0");

  std::string objective = "maxmin";
  std::string mode_name;
  auto* oracle = app.add_subcommand("oracle", "Exact brute-force optimum for small instances");
  add_input(oracle, in);
  add_search(oracle, search);
  oracle->add_option("-c,--constraints", constraints, "Per-group counts")->required();
  oracle->add_option("--objective", objective, "maxmin | kcenter");
  oracle->add_option("--mode", mode_name, "disjoint | overlapping (default: from data)");
  oracle->add_option("-o,--output", output, "Result file (default stdout)");
  oracle->add_flag("--no-timing", no_timing, "Write wall_ms as 0");

  std::vector<std::string> bench_algorithms;
  fairdiv::BenchConfig bench_config;
  fairdiv::ScalingConfig scaling_config;
  bool timing_only = false;
  std::string layout = "uniform";
  std::string sizes_text = "10000,100000";
  auto* bench = app.add_subcommand("bench", "Approximation ratios against the oracle, or timing sweeps");
  add_search(bench, search);
  bench->add_option("-a,--algorithm", bench_algorithms, "Algorithms to run (repeatable)")->required();
  bench->add_option("--instances", bench_config.instances, "Random instances");
  bench->add_option("--n-min", bench_config.n_min, "Smallest n");
  bench->add_option("--n-max", bench_config.n_max, "Largest n");
  bench->add_option("--m", bench_config.m, "Group count");
  bench->add_option("--k-min", bench_config.k_min, "Smallest per-group count");
  bench->add_option("--k-max", bench_config.k_max, "Largest per-group count");
  bench->add_option("--overlap", bench_config.overlap, "Chance of each extra label");
  bench->add_option("--layout", layout, "uniform | clustered");
  bench->add_flag("--timing-only", timing_only, "Scaling sweep instead of oracle ratios");
  bench->add_option("--sizes", sizes_text, "Sizes for --timing-only, comma-separated");
  bench->add_option("--k", scaling_config.k, "Total k for --timing-only");
  bench->add_option("--repetitions", scaling_config.repetitions, "Timing repetitions (fastest kept)");
  bench->add_option("-o,--output", output, "Report file (default stdout)");
  bench->add_flag("--no-timing", no_timing, "Write wall_ms as 0");

  double tolerance = fairdiv::kDefaultMetricTolerance;
  bool strict = false;
  auto* check = app.add_subcommand("check-metric", "Report pseudometric violations of a distance matrix");
  add_input(check, in);
  check->add_option("--tolerance", tolerance, "Relative tolerance");
  check->add_flag("--strict", strict, "Exit with code 2 when violations are found");
  check->add_option("-o,--output", output, "Report file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  try {
    const fairdiv::RecordOptions base{!no_timing, 0.0};
    if (select->parsed()) {
      const fairdiv::Dataset ds = load(in);
      const auto options = solve_options(search);
      if (algorithm == "oracle") {
        const auto spec = fairdiv::parse_constraints(constraints, ds, ds.mode());
        const auto start = std::chrono::steady_clock::now();
        const auto r = fairdiv::oracle_fair_maxmin(ds, spec, options.budget);
        emit(fairdiv::oracle_record(ds, r, false, {base.include_timing, since_ms(start)}), output);
        return kOk;
      }
      const auto a = fairdiv::parse_algorithm(algorithm);
      if (!a) throw ParseError("unknown algorithm '" + algorithm + "'");
      auto spec = fairdiv::parse_constraints(constraints, ds, fairdiv::constraint_mode(*a));
      if (*a == fairdiv::Algorithm::kGmm && k) {
        spec.counts.assign(ds.group_count(), 0);
        if (!spec.counts.empty()) spec.counts[0] = *k;
      }
      const auto start = std::chrono::steady_clock::now();
      const auto result = fairdiv::solve(*a, ds, spec, options);
      const fairdiv::RecordOptions rec{base.include_timing, since_ms(start)};
      if (const auto* sel = std::get_if<fairdiv::Selection>(&result)) {
        emit(fairdiv::selection_record(ds, *sel, rec), output);
      } else {
        emit(fairdiv::cluster_record(ds, std::get<fairdiv::ClusterResult>(result), rec), output);
      }
      return kOk;
    }
    if (oracle->parsed()) {
      const fairdiv::Dataset ds = load(in);
      const auto options = solve_options(search);
      fairdiv::Mode mode = ds.mode();
      if (mode_name == "disjoint") {
        mode = fairdiv::Mode::kDisjoint;
      } else if (mode_name == "overlapping") {
        mode = fairdiv::Mode::kOverlapping;
      } else if (!mode_name.empty()) {
        throw ParseError("unknown mode '" + mode_name + "'");
      }
      const bool kcenter = objective == "kcenter";
      if (!kcenter && objective != "maxmin") throw ParseError("unknown objective '" + objective + "'");
      const auto spec = fairdiv::parse_constraints(constraints, ds, mode);
      const auto start = std::chrono::steady_clock::now();
      const auto r = kcenter ? fairdiv::oracle_fair_kcenter(ds, spec, options.budget)
                             : fairdiv::oracle_fair_maxmin(ds, spec, options.budget);
      emit(fairdiv::oracle_record(ds, r, kcenter, {base.include_timing, since_ms(start)}), output);
      return kOk;
    }
    if (bench->parsed()) {
      std::vector<fairdiv::Algorithm> algorithms;
      for (const auto& name : bench_algorithms) {
        const auto a = fairdiv::parse_algorithm(name);
        if (!a) throw ParseError("unknown algorithm '" + name + "'");
        algorithms.push_back(*a);
      }
      fairdiv::Layout lay = fairdiv::Layout::kUniform;
      if (layout == "clustered") {
        lay = fairdiv::Layout::kClustered;
      } else if (layout != "uniform") {
        throw ParseError("unknown layout '" + layout + "'");
      }
      const auto options = solve_options(search);
      if (timing_only) {
        scaling_config.algorithms = algorithms;
        scaling_config.sizes = parse_sizes(sizes_text);
        scaling_config.m = bench_config.m;
        scaling_config.layout = lay;
        scaling_config.seed = search.seed;
        emit(fairdiv::scaling_to_json(fairdiv::run_scaling_bench(scaling_config)), output);
        return kOk;
      }
      if (bench_config.n_min > bench_config.n_max || bench_config.k_min > bench_config.k_max) {
        throw ParseError("empty n or k range");
      }
      bench_config.algorithms = algorithms;
      bench_config.layout = lay;
      bench_config.seed = search.seed;
      bench_config.solve = options;
      bench_config.oracle_budget = options.budget;
      const auto report = fairdiv::run_ratio_bench(bench_config);
      emit(fairdiv::bench_to_json(report, !no_timing), output);
      return kOk;
    }
    if (check->parsed()) {
      const fairdiv::Dataset ds = load(in);
      const auto report = fairdiv::validate_pseudometric(ds, tolerance);
      nlohmann::json violations = nlohmann::json::array();
      for (const auto& v : report.violations) {
        const char* kind = v.kind == fairdiv::MetricViolation::Kind::kDiagonal   ? "diagonal"
                           : v.kind == fairdiv::MetricViolation::Kind::kSymmetry ? "symmetry"
                                                                                 : "triangle";
        nlohmann::json entry{{"kind", kind}, {"a", ds.external_id(v.a)}, {"b", ds.external_id(v.b)},
                             {"excess", v.excess}};
        if (v.kind == fairdiv::MetricViolation::Kind::kTriangle) entry["c"] = ds.external_id(v.c);
        violations.push_back(std::move(entry));
      }
      emit({{"clean", report.clean()},
            {"exhaustive", report.exhaustive},
            {"triples_checked", report.triples_checked},
            {"violations", violations}},
           output);
      return strict && !report.clean() ? kParse : kOk;
    }
  } catch (const fairdiv::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  } catch (const fairdiv::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const fairdiv::BudgetError& e) {
    std::cerr << "budget: " << e.what() << "\n";
    return kBudget;
  } catch (const fairdiv::InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUnexpected;
  }
  return kOk;
}
