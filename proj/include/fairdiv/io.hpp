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

// CSV ingestion, dataset serialization, constraint parsing and JSON result
// records.
//
// Points CSV:  header "id,groups,f1,...,fd"; groups is a '|'-separated list.
// Matrix CSV:  n rows of n numbers, plus a sidecar "id,groups" file whose
//              rows are aligned with the matrix rows.

#ifndef FAIRDIV_IO_HPP_
#define FAIRDIV_IO_HPP_

#include <iosfwd>
#include <string>

#include "fairdiv/clustering.hpp"
#include "fairdiv/core.hpp"
#include "fairdiv/oracle.hpp"
#include "json.hpp"

namespace fairdiv {

// All readers throw ParseError naming the source and line on bad input.
Dataset read_points_csv(std::istream& in, MetricKind metric = MetricKind::kEuclidean,
                        const std::string& source = "<points>");
Dataset read_matrix_csv(std::istream& matrix, std::istream& labels,
                        const std::string& matrix_source = "<matrix>",
                        const std::string& labels_source = "<labels>");
Dataset load_points_csv(const std::string& path, MetricKind metric = MetricKind::kEuclidean);
Dataset load_matrix_csv(const std::string& matrix_path, const std::string& labels_path);

// Shortest round-trip representation of each number.
void write_points_csv(std::ostream& out, const Dataset& ds);
void write_matrix_csv(std::ostream& matrix, std::ostream& labels, const Dataset& ds);

// Same ids, groups (in order), memberships and bit-identical distances source.
bool same_dataset(const Dataset& a, const Dataset& b);

// "a=3,b=2". Unlisted groups get 0; unknown names, repeats, negative or
// non-integer values throw ParseError.
FairnessSpec parse_constraints(const std::string& text, const Dataset& ds, Mode mode);

MetricKind parse_metric(const std::string& name);

struct RecordOptions {
  bool include_timing = true;
  double wall_ms = 0.0;
};

// Result records. Infinite diversity is written as null.
nlohmann::json selection_record(const Dataset& ds, const Selection& sel, const RecordOptions& opt);
nlohmann::json cluster_record(const Dataset& ds, const ClusterResult& r, const RecordOptions& opt);
nlohmann::json oracle_record(const Dataset& ds, const OracleResult& r, bool kcenter,
                             const RecordOptions& opt);

}  // namespace fairdiv

#endif  // FAIRDIV_IO_HPP_
