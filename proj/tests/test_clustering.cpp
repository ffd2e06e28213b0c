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

#include "doctest.h"
#include "fairdiv/clustering.hpp"
#include "fairdiv/fair_flow.hpp"
#include "fairdiv/oracle.hpp"
#include "test_util.hpp"

using namespace fairdiv;
using namespace fairdiv::testing;

TEST_CASE("k-center: covering radius") {
  const Dataset ds = line({0, 1, 2, 10}, {"a", "a", "a", "a"});
  const std::vector<ElementId> c{1};
  CHECK(covering_radius(ds, c) == 9.0);
  const std::vector<ElementId> c2{1, 3};
  CHECK(covering_radius(ds, c2) == 1.0);
  CHECK_THROWS_AS(covering_radius(ds, {}), std::invalid_argument);
}

TEST_CASE("k-center: well separated clusters") {
  std::vector<double> xs;
  std::vector<std::string> gs;
  for (int c = 0; c < 3; ++c) {
    for (int j = 0; j < 5; ++j) {
      xs.push_back(100.0 * c + 0.1 * j);
      gs.push_back(j % 2 == 0 ? "a" : "b");
    }
  }
  const Dataset ds = line(xs, gs);
  const FairnessSpec spec = spec_of({2, 1});
  const ClusterResult r = fair_kcenter(ds, spec);
  CHECK(r.per_group_counts == spec.counts);
  const double opt = oracle_fair_kcenter(ds, spec).opt_value;
  // Each cluster needs a center; the one holding the b center has radius 0.3.
  CHECK(opt == doctest::Approx(0.3));
  CHECK(r.radius <= 3.0 * opt + 1e-12);
  CHECK(r.radius == naive_radius(ds, r.centers));
}

TEST_CASE("k-center: small guesses abort") {
  const Dataset ds = line({0, 10, 20, 30}, {"a", "b", "a", "b"});
  const ClusterResult r = fair_kcenter_probe(ds, spec_of({1, 1}), 1.0);
  CHECK(r.aborted);
  const ClusterResult ok = fair_kcenter_probe(ds, spec_of({1, 1}), 100.0);
  CHECK_FALSE(ok.aborted);
  CHECK(ok.radius <= 300.0);
}

TEST_CASE("k-center: every point a center") {
  const Dataset ds = line({0, 5, 9}, {"a", "b", "b"});
  const ClusterResult r = fair_kcenter(ds, spec_of({1, 2}));
  CHECK(r.radius == 0.0);
  CHECK(r.centers.size() == 3);
}

TEST_CASE("k-center: coincident points") {
  const Dataset ds = line({2, 2, 2, 2, 2}, {"a", "b", "a", "b", "a"});
  const ClusterResult r = fair_kcenter(ds, spec_of({1, 1}));
  CHECK(r.radius == 0.0);
  CHECK(r.per_group_counts == std::vector<int>{1, 1});
}

TEST_CASE("k-center: within three times the optimum") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const std::size_t m = 1 + seed % 3;
    const Dataset ds = random_instance(seed + 900, 13, m);
    const FairnessSpec spec = random_counts(ds, Mode::kDisjoint, 1, 3, seed);
    const double opt = oracle_fair_kcenter(ds, spec).opt_value;
    CAPTURE(seed);
    const ClusterResult d = fair_kcenter(ds, spec);
    CHECK(d.per_group_counts == spec.counts);
    CHECK_FALSE(d.aborted);
    CHECK(d.radius <= 3.0 * opt * (1.0 + 1e-12));
    CHECK(d.radius == naive_radius(ds, d.centers));
    const ClusterResult c = fair_kcenter(ds, spec, GuessSearch::continuous(0.05));
    CHECK(c.per_group_counts == spec.counts);
    CHECK(c.radius <= 3.0 * 1.05 * opt * (1.0 + 1e-9));
  }
}

TEST_CASE("k-center and max-min pick different sets") {
  // White at 1, 2, 3; black at 4, 5, 6. One of each.
  const Dataset ds = line({1, 2, 3, 4, 5, 6}, {"w", "w", "w", "b", "b", "b"});
  const FairnessSpec spec = spec_of({1, 1});
  const OracleResult kc = oracle_fair_kcenter(ds, spec);
  const OracleResult mm = oracle_fair_maxmin(ds, spec);
  CHECK(kc.opt_value == 1.0);
  CHECK(kc.witness == std::vector<ElementId>{1, 4});
  CHECK(mm.opt_value == 5.0);
  CHECK(mm.witness == std::vector<ElementId>{0, 5});
  const ClusterResult r = fair_kcenter(ds, spec);
  const Selection s = fair_flow(ds, spec);
  CHECK(r.radius <= 3.0);
  CHECK(s.diversity >= 1.0);
  std::vector<ElementId> a = r.centers, b = s.chosen;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  CHECK(a != b);
}

TEST_CASE("k-center: rejects bad specs") {
  const Dataset ds = line({0, 1}, {"a", "b"});
  CHECK_THROWS_AS(fair_kcenter(ds, spec_of({2, 0})), InfeasibleError);
}
