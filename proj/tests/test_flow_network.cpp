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

#include <random>

#include "doctest.h"
#include "fairdiv/core.hpp"
#include "fairdiv/flow_network.hpp"

using namespace fairdiv;

namespace {

// Min cut by enumerating every source side; small networks only.
std::int64_t brute_min_cut(const FlowNetwork& net, std::size_t s, std::size_t t) {
  const std::size_t n = net.node_count();
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    if (!((mask >> s) & 1U) || ((mask >> t) & 1U)) continue;
    std::int64_t cut = 0;
    for (const auto& e : net.edges()) {
      if (((mask >> e.from) & 1U) && !((mask >> e.to) & 1U)) cut += e.capacity;
    }
    best = std::min(best, cut);
  }
  return best;
}

}  // namespace

TEST_CASE("flow: three classes over five components") {
  AssignmentProblem p;
  p.class_capacity = {2, 1, 1};
  p.component_count = 5;
  p.incidences = {{0, 0}, {0, 1}, {1, 0}, {1, 2}, {1, 3}, {2, 3}, {2, 4}};
  const Assignment a = solve_assignment(p);
  CHECK(a.value == 4);
  CHECK(a.used.size() == 4);
  std::vector<int> per_class(3), per_comp(5);
  for (auto [c, k] : a.used) {
    ++per_class[c];
    ++per_comp[k];
  }
  CHECK(per_class == std::vector<int>{2, 1, 1});
  for (int v : per_comp) CHECK(v <= 1);
}

TEST_CASE("flow: capacity bounds the assignment") {
  AssignmentProblem single;
  single.class_capacity = {1};
  single.component_count = 3;
  single.incidences = {{0, 0}, {0, 1}, {0, 2}};
  CHECK(solve_assignment(single).value == 1);

  AssignmentProblem starved;
  starved.class_capacity = {2};
  starved.component_count = 1;
  starved.incidences = {{0, 0}};
  CHECK(solve_assignment(starved).value == 1);

  AssignmentProblem empty;
  CHECK(solve_assignment(empty).value == 0);
}

TEST_CASE("flow: bad edges are rejected") {
  FlowNetwork net(2);
  CHECK_THROWS_AS(net.add_edge(0, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(net.add_edge(0, 1, -1), std::invalid_argument);
}

TEST_CASE("flow: check_flow notices broken flows") {
  FlowNetwork net(3);
  net.add_edge(0, 1, 2);
  net.add_edge(1, 2, 1);
  FlowResult r = max_flow(net, 0, 2);
  CHECK(r.value == 1);
  CHECK(check_flow(net, 0, 2, r).empty());
  FlowResult over = r;
  over.edge_flow[1] = 2;
  CHECK_FALSE(check_flow(net, 0, 2, over).empty());
  FlowResult leak = r;
  leak.edge_flow[0] = 2;
  CHECK_FALSE(check_flow(net, 0, 2, leak).empty());
  FlowResult wrong = r;
  wrong.value = 5;
  CHECK_FALSE(check_flow(net, 0, 2, wrong).empty());
}

TEST_CASE("flow: random networks match brute-force min cut") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng() % 8;
    FlowNetwork net(n);
    const std::size_t edges = rng() % (n * 3);
    for (std::size_t e = 0; e < edges; ++e) {
      const std::size_t a = rng() % n, b = rng() % n;
      if (a == b) continue;
      net.add_edge(a, b, static_cast<std::int64_t>(rng() % 6));
    }
    const FlowResult r = max_flow(net, 0, n - 1);
    CHECK(r.value == brute_min_cut(net, 0, n - 1));
    CHECK(check_flow(net, 0, n - 1, r).empty());
  }
}
