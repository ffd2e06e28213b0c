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

#include "fairdiv/core.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_map>

namespace fairdiv {

void Dataset::init_labels(const std::vector<std::vector<std::string>>& labels,
                          std::vector<std::string> ids) {
  const std::size_t n = labels.size();
  if (ids.empty()) {
    ids.reserve(n);
    for (std::size_t i = 0; i < n; ++i) ids.push_back(std::to_string(i));
  }
  if (ids.size() != n) throw ParseError("id count does not match element count");
  std::unordered_map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < n; ++i) {
    if (!seen.emplace(ids[i], i).second) throw ParseError("duplicate element id '" + ids[i] + "'");
  }
  ids_ = std::move(ids);

  masks_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (labels[i].empty()) throw ParseError("element '" + ids_[i] + "' has no group label");
    for (const auto& name : labels[i]) {
      if (name.empty()) throw ParseError("element '" + ids_[i] + "' has an empty group label");
      auto it = std::find(group_names_.begin(), group_names_.end(), name);
      std::size_t g = static_cast<std::size_t>(it - group_names_.begin());
      if (it == group_names_.end()) {
        if (group_names_.size() == kMaxGroups) throw ParseError("more than 64 groups");
        group_names_.push_back(name);
      }
      masks_[i] |= GroupMask{1} << g;
    }
    if (std::popcount(masks_[i]) > 1) mode_ = Mode::kOverlapping;
  }
  members_.assign(group_names_.size(), {});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t g = 0; g < group_names_.size(); ++g) {
      if ((masks_[i] >> g) & 1U) members_[g].push_back(static_cast<ElementId>(i));
    }
  }
}

Dataset Dataset::from_points(const PointMatrix& points,
                             const std::vector<std::vector<std::string>>& labels,
                             MetricKind metric, std::vector<std::string> ids) {
  if (points.rows != labels.size()) throw ParseError("label count does not match point count");
  if (points.dim == 0) throw ParseError("points need at least one feature");
  if (points.values.size() != points.rows * points.dim) throw ParseError("ragged point matrix");
  Dataset ds;
  ds.init_labels(labels, std::move(ids));
  ds.metric_ = metric;
  ds.dim_ = points.dim;
  const std::size_t n = points.rows;
  ds.coords_.resize(n * points.dim);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < points.dim; ++j) {
      const double v = points.values[i * points.dim + j];
      if (!std::isfinite(v)) throw ParseError("non-finite coordinate for '" + ds.ids_[i] + "'");
      ds.coords_[j * n + i] = v;
    }
  }
  return ds;
}

Dataset Dataset::from_rows(const std::vector<std::vector<double>>& rows,
                           const std::vector<std::vector<std::string>>& labels,
                           MetricKind metric, std::vector<std::string> ids) {
  PointMatrix pm;
  pm.rows = rows.size();
  pm.dim = rows.empty() ? 1 : rows.front().size();
  for (const auto& r : rows) {
    if (r.size() != pm.dim) throw ParseError("ragged point rows");
    pm.values.insert(pm.values.end(), r.begin(), r.end());
  }
  return from_points(pm, labels, metric, std::move(ids));
}

Dataset Dataset::from_matrix(std::vector<double> matrix, std::size_t n,
                             const std::vector<std::vector<std::string>>& labels,
                             std::vector<std::string> ids) {
  if (labels.size() != n) throw ParseError("label count does not match matrix size");
  if (matrix.size() != n * n) throw ParseError("distance matrix is not n x n");
  for (double v : matrix) {
    if (!std::isfinite(v) || v < 0.0) throw ParseError("distance matrix entries must be finite and >= 0");
  }
  Dataset ds;
  ds.init_labels(labels, std::move(ids));
  ds.matrix_ = std::move(matrix);
  return ds;
}

double Dataset::distance(ElementId u, ElementId v) const {
  const std::size_t n = size();
  if (u >= n || v >= n) throw std::out_of_range("element id out of range");
  if (dim_ == 0) return matrix_[static_cast<std::size_t>(u) * n + v];
  double acc = 0.0;
  if (metric_ == MetricKind::kEuclidean) {
    for (std::size_t j = 0; j < dim_; ++j) {
      const double t = coords_[j * n + v] - coords_[j * n + u];
      acc = acc + t * t;
    }
    return std::sqrt(acc);
  }
  for (std::size_t j = 0; j < dim_; ++j) acc = acc + std::fabs(coords_[j * n + v] - coords_[j * n + u]);
  return acc;
}

std::optional<ElementId> Dataset::find_id(const std::string& external) const {
  auto it = std::find(ids_.begin(), ids_.end(), external);
  if (it == ids_.end()) return std::nullopt;
  return static_cast<ElementId>(it - ids_.begin());
}

std::optional<std::size_t> Dataset::group_index(const std::string& name) const {
  auto it = std::find(group_names_.begin(), group_names_.end(), name);
  if (it == group_names_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - group_names_.begin());
}

std::size_t Dataset::primary_group(ElementId u) const {
  return static_cast<std::size_t>(std::countr_zero(masks_[u]));
}

std::vector<ElementId> Dataset::all_elements() const {
  std::vector<ElementId> all(size());
  std::iota(all.begin(), all.end(), ElementId{0});
  return all;
}

int FairnessSpec::total() const { return std::accumulate(counts.begin(), counts.end(), 0); }

int FairnessSpec::max_count() const {
  return counts.empty() ? 0 : *std::max_element(counts.begin(), counts.end());
}

void validate_spec(const Dataset& ds, const FairnessSpec& spec) {
  if (spec.counts.size() != ds.group_count()) {
    throw InfeasibleError("constraints list " + std::to_string(spec.counts.size()) +
                          " groups, dataset has " + std::to_string(ds.group_count()));
  }
  if (spec.mode == Mode::kDisjoint && ds.mode() == Mode::kOverlapping) {
    throw InfeasibleError("disjoint constraints over a dataset with multi-labelled elements");
  }
  for (std::size_t g = 0; g < spec.counts.size(); ++g) {
    const int k = spec.counts[g];
    if (k < 0) throw InfeasibleError("negative count for group '" + ds.group_names()[g] + "'");
    if (static_cast<std::size_t>(k) > ds.members(g).size()) {
      throw InfeasibleError("group '" + ds.group_names()[g] + "' needs " + std::to_string(k) +
                            " elements but has " + std::to_string(ds.members(g).size()));
    }
  }
  if (spec.mode == Mode::kDisjoint && spec.total() < 1) {
    throw InfeasibleError("total selection size must be at least 1");
  }
}

double diversity(const Dataset& ds, std::span<const ElementId> set) {
  if (set.empty()) throw std::invalid_argument("diversity of an empty set");
  double best = kInfiniteDiversity;
  for (std::size_t a = 0; a < set.size(); ++a) {
    for (std::size_t b = a + 1; b < set.size(); ++b) {
      best = std::min(best, ds.distance(set[a], set[b]));
    }
  }
  return best;
}

std::vector<int> group_counts(const Dataset& ds, std::span<const ElementId> set) {
  std::vector<int> counts(ds.group_count(), 0);
  for (ElementId u : set) {
    for (std::size_t g = 0; g < ds.group_count(); ++g) {
      if (ds.in_group(u, g)) ++counts[g];
    }
  }
  return counts;
}

void finalize_selection(const Dataset& ds, Selection& sel) {
  sel.per_group_counts = group_counts(ds, sel.chosen);
  sel.diversity = sel.chosen.empty() ? 0.0 : diversity(ds, sel.chosen);
}

namespace {

bool exceeds(double excess, double scale, double tolerance) {
  return excess > tolerance * std::max(scale, 1e-300);
}

}  // namespace

MetricReport validate_pseudometric(const Dataset& ds, double tolerance,
                                   std::uint64_t sample_triples, std::uint64_t seed) {
  MetricReport report;
  if (ds.has_points()) return report;
  const std::size_t n = ds.size();
  for (std::size_t a = 0; a < n; ++a) {
    const auto ua = static_cast<ElementId>(a);
    const double diag = ds.distance(ua, ua);
    if (diag != 0.0) report.violations.push_back({MetricViolation::Kind::kDiagonal, ua, ua, 0, diag});
    for (std::size_t b = a + 1; b < n; ++b) {
      const auto ub = static_cast<ElementId>(b);
      const double ab = ds.distance(ua, ub);
      const double ba = ds.distance(ub, ua);
      const double diff = std::fabs(ab - ba);
      if (diff != 0.0 && exceeds(diff, std::max(ab, ba), tolerance)) {
        report.violations.push_back({MetricViolation::Kind::kSymmetry, ua, ub, 0, diff});
      }
    }
  }
  auto check = [&](ElementId a, ElementId b, ElementId c) {
    ++report.triples_checked;
    const double direct = ds.distance(a, c);
    const double via = ds.distance(a, b) + ds.distance(b, c);
    if (direct > via && exceeds(direct - via, direct, tolerance)) {
      report.violations.push_back({MetricViolation::Kind::kTriangle, a, b, c, direct - via});
    }
  };
  if (n <= 500) {
    for (ElementId a = 0; a < n; ++a) {
      for (ElementId c = 0; c < n; ++c) {
        if (c == a) continue;
        for (ElementId b = 0; b < n; ++b) {
          if (b != a && b != c) check(a, b, c);
        }
      }
    }
    return report;
  }
  report.exhaustive = false;
  std::mt19937_64 rng(seed);
  for (std::uint64_t s = 0; s < sample_triples; ++s) {
    const auto a = static_cast<ElementId>(rng() % n);
    const auto b = static_cast<ElementId>(rng() % n);
    const auto c = static_cast<ElementId>(rng() % n);
    if (a != b && b != c && a != c) check(a, b, c);
  }
  return report;
}

std::size_t seeded_index(std::uint64_t seed, std::size_t size) {
  if (size == 0) throw std::invalid_argument("seeded_index over an empty range");
  std::mt19937_64 rng(seed);
  return static_cast<std::size_t>(rng() % size);
}

}  // namespace fairdiv
