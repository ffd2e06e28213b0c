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

#ifndef FAIRDIV_CORE_HPP_
#define FAIRDIV_CORE_HPP_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fairdiv {

// Dense internal element index in [0, n).
using ElementId = std::uint32_t;

// Bit i set <=> element belongs to group i.
using GroupMask = std::uint64_t;
inline constexpr std::size_t kMaxGroups = 64;

// Diversity of a set with fewer than two elements.
inline constexpr double kInfiniteDiversity = std::numeric_limits<double>::infinity();

enum class Mode { kDisjoint, kOverlapping };
enum class MetricKind { kEuclidean, kManhattan };

// ---------------------------------------------------------------------------
// Errors. Each maps to one CLI exit code.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input, unknown group names, bad configuration. Exit code 2.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Constraints that cannot be met or that the chosen algorithm does not accept.
// Exit code 3.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

// Exhaustive search would exceed the configured candidate budget. Exit code 4.
class BudgetError : public Error {
 public:
  BudgetError(const std::string& what, std::uint64_t required, std::uint64_t budget)
      : Error(what), required_(required), budget_(budget) {}
  std::uint64_t required() const { return required_; }
  std::uint64_t budget() const { return budget_; }

 private:
  std::uint64_t required_;
  std::uint64_t budget_;
};

// A structural property the algorithms rely on was observed to be false.
// Exit code 5; never expected on valid (pseudo)metric input.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// ---------------------------------------------------------------------------

// Row-major n x dim feature matrix.
struct PointMatrix {
  std::size_t rows = 0;
  std::size_t dim = 0;
  std::vector<double> values;
};

// Immutable point collection with group memberships and a distance source.
//
// Feature vectors are stored feature-major (coordinate j of all points is
// contiguous) so the SIMD kernels can run one lane per point.
class Dataset {
 public:
  // Feature-vector dataset. `labels[i]` lists the group names of element i.
  // Empty `ids` yields "0".."n-1".
  static Dataset from_points(const PointMatrix& points,
                             const std::vector<std::vector<std::string>>& labels,
                             MetricKind metric = MetricKind::kEuclidean,
                             std::vector<std::string> ids = {});

  // Convenience overload for tests and small tools.
  static Dataset from_rows(const std::vector<std::vector<double>>& rows,
                           const std::vector<std::vector<std::string>>& labels,
                           MetricKind metric = MetricKind::kEuclidean,
                           std::vector<std::string> ids = {});

  // Precomputed n x n matrix, row-major. Only finiteness and non-negativity
  // are checked here; see validate_pseudometric for the rest.
  static Dataset from_matrix(std::vector<double> matrix, std::size_t n,
                             const std::vector<std::vector<std::string>>& labels,
                             std::vector<std::string> ids = {});

  std::size_t size() const { return ids_.size(); }
  std::size_t group_count() const { return group_names_.size(); }
  Mode mode() const { return mode_; }
  bool has_points() const { return dim_ > 0; }
  std::size_t dim() const { return dim_; }
  MetricKind metric() const { return metric_; }

  double distance(ElementId u, ElementId v) const;

  const std::string& external_id(ElementId u) const { return ids_.at(u); }
  const std::vector<std::string>& external_ids() const { return ids_; }
  std::optional<ElementId> find_id(const std::string& external) const;

  const std::vector<std::string>& group_names() const { return group_names_; }
  std::optional<std::size_t> group_index(const std::string& name) const;

  GroupMask membership(ElementId u) const { return masks_[u]; }
  bool in_group(ElementId u, std::size_t group) const {
    return (masks_[u] >> group) & 1U;
  }
  // Lowest group index of u; the only group in disjoint mode.
  std::size_t primary_group(ElementId u) const;
  // Elements of group i in increasing id order.
  const std::vector<ElementId>& members(std::size_t group) const { return members_[group]; }
  std::vector<ElementId> all_elements() const;

  double coordinate(ElementId u, std::size_t j) const { return coords_[j * size() + u]; }
  // Coordinate j of every element, contiguous.
  std::span<const double> feature_column(std::size_t j) const {
    return {coords_.data() + j * size(), size()};
  }
  std::span<const double> matrix_row(ElementId u) const {
    return {matrix_.data() + static_cast<std::size_t>(u) * size(), size()};
  }

 private:
  Dataset() = default;
  void init_labels(const std::vector<std::vector<std::string>>& labels,
                   std::vector<std::string> ids);

  std::vector<std::string> ids_;
  std::vector<std::string> group_names_;
  std::vector<GroupMask> masks_;
  std::vector<std::vector<ElementId>> members_;
  Mode mode_ = Mode::kDisjoint;
  MetricKind metric_ = MetricKind::kEuclidean;
  std::size_t dim_ = 0;
  std::vector<double> coords_;  // dim x n, feature-major
  std::vector<double> matrix_;  // n x n when precomputed
};

// Per-group required counts, indexed by group index of the dataset.
struct FairnessSpec {
  std::vector<int> counts;
  Mode mode = Mode::kDisjoint;

  int total() const;
  int max_count() const;
  std::size_t group_count() const { return counts.size(); }
};

// Throws InfeasibleError on k_i > |U_i|, negative counts, wrong group count,
// a disjoint spec over overlapping data, or a disjoint total of zero.
void validate_spec(const Dataset& ds, const FairnessSpec& spec);

// Counters that solvers fill in as they go.
struct Diagnostics {
  std::uint64_t distance_evaluations = 0;
  int flow_networks = 0;     // networks built and verified
  int component_checks = 0;      // component-structure checks that passed
  int guesses_tried = 0;     // (gamma, flow-guess) pairs in the overlap solver
  bool non_monotone = false; // a probe failed at a guess the final answer achieves
};

struct Selection {
  std::vector<ElementId> chosen;
  double diversity = 0.0;
  std::vector<int> per_group_counts;
  std::optional<double> gamma_used;
  bool aborted = false;
  std::string algorithm;
  int probes = 0;
  Diagnostics diagnostics;
};

// Fills diversity and per_group_counts from `chosen`.
void finalize_selection(const Dataset& ds, Selection& sel);

// Min pairwise distance; kInfiniteDiversity for a singleton. Throws
// std::invalid_argument on an empty set.
double diversity(const Dataset& ds, std::span<const ElementId> set);

std::vector<int> group_counts(const Dataset& ds, std::span<const ElementId> set);

struct MetricViolation {
  enum class Kind { kDiagonal, kSymmetry, kTriangle };
  Kind kind;
  ElementId a;
  ElementId b;
  ElementId c;  // unused for diagonal/symmetry
  double excess;
};

struct MetricReport {
  bool exhaustive = true;
  std::uint64_t triples_checked = 0;
  std::vector<MetricViolation> violations;
  bool clean() const { return violations.empty(); }
};

inline constexpr double kDefaultMetricTolerance = 1e-9;

// Reports zero-diagonal, symmetry and triangle-inequality violations beyond a
// relative tolerance. Exhaustive up to 500 elements; above that a seeded
// sample of triples. Feature-vector sources are metrics by construction and
// yield a clean report.
MetricReport validate_pseudometric(const Dataset& ds,
                                   double tolerance = kDefaultMetricTolerance,
                                   std::uint64_t sample_triples = 2'000'000,
                                   std::uint64_t seed = 0);

// Deterministic index in [0, size) derived from a seed. Used wherever an
// algorithm asks for "a random point".
std::size_t seeded_index(std::uint64_t seed, std::size_t size);

}  // namespace fairdiv

#endif  // FAIRDIV_CORE_HPP_
