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

#include "fairdiv/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <vector>

namespace fairdiv {

namespace {

std::string trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return std::string(s.substr(begin, end - begin + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? s.npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& what) {
  throw ParseError(source + ":" + std::to_string(line) + ": " + what);
}

double parse_number(const std::string& field, const std::string& source, std::size_t line) {
  double v = 0.0;
  const char* first = field.data();
  const char* last = first + field.size();
  if (!field.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (field.empty() || ec != std::errc() || ptr != last || !std::isfinite(v)) {
    fail(source, line, "not a finite number: '" + field + "'");
  }
  return v;
}

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

// Reads non-blank lines with their 1-based line numbers.
std::vector<std::pair<std::size_t, std::string>> read_lines(std::istream& in) {
  std::vector<std::pair<std::size_t, std::string>> lines;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (number == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (trim(line).empty()) continue;
    lines.emplace_back(number, line);
  }
  return lines;
}

std::vector<std::string> parse_groups(const std::string& field, const std::string& source,
                                      std::size_t line) {
  std::vector<std::string> groups = split(field, '|');
  std::set<std::string> seen;
  for (const auto& g : groups) {
    if (g.empty()) fail(source, line, "empty group label in '" + field + "'");
    if (!seen.insert(g).second) fail(source, line, "group '" + g + "' listed twice");
  }
  return groups;
}

// Parses an "id,groups,..." file body; `extra` receives the remaining fields.
void read_labelled_rows(const std::vector<std::pair<std::size_t, std::string>>& rows,
                        std::size_t expected_fields, const std::string& source,
                        std::vector<std::string>& ids, std::vector<std::vector<std::string>>& labels,
                        std::vector<double>* values) {
  std::set<std::string> seen;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& [line, text] = rows[r];
    const auto fields = split(text, ',');
    if (fields.size() != expected_fields) {
      fail(source, line, "expected " + std::to_string(expected_fields) + " fields, found " +
                             std::to_string(fields.size()));
    }
    if (fields[0].empty()) fail(source, line, "empty id");
    if (!seen.insert(fields[0]).second) fail(source, line, "duplicate id '" + fields[0] + "'");
    ids.push_back(fields[0]);
    labels.push_back(parse_groups(fields[1], source, line));
    if (values != nullptr) {
      for (std::size_t f = 2; f < fields.size(); ++f) values->push_back(parse_number(fields[f], source, line));
    }
  }
}

void check_header(const std::vector<std::pair<std::size_t, std::string>>& rows, const std::string& source,
                  std::size_t min_fields) {
  if (rows.empty()) throw ParseError(source + ": empty file");
  const auto header = split(rows[0].second, ',');
  if (header.size() < min_fields || header[0] != "id" || header[1] != "groups") {
    fail(source, rows[0].first, "header must start with 'id,groups'");
  }
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  return in;
}

}  // namespace

Dataset read_points_csv(std::istream& in, MetricKind metric, const std::string& source) {
  const auto rows = read_lines(in);
  check_header(rows, source, 3);
  const std::size_t fields = split(rows[0].second, ',').size();
  std::vector<std::string> ids;
  std::vector<std::vector<std::string>> labels;
  PointMatrix pm;
  pm.dim = fields - 2;
  read_labelled_rows(rows, fields, source, ids, labels, &pm.values);
  pm.rows = ids.size();
  if (pm.rows == 0) throw ParseError(source + ": no data rows");
  return Dataset::from_points(pm, labels, metric, std::move(ids));
}

Dataset read_matrix_csv(std::istream& matrix, std::istream& labels_in, const std::string& matrix_source,
                        const std::string& labels_source) {
  const auto label_rows = read_lines(labels_in);
  check_header(label_rows, labels_source, 2);
  std::vector<std::string> ids;
  std::vector<std::vector<std::string>> labels;
  read_labelled_rows(label_rows, 2, labels_source, ids, labels, nullptr);
  const std::size_t n = ids.size();
  if (n == 0) throw ParseError(labels_source + ": no data rows");

  const auto rows = read_lines(matrix);
  if (rows.size() != n) {
    throw ParseError(matrix_source + ": " + std::to_string(rows.size()) + " rows, labels list " +
                     std::to_string(n) + " elements");
  }
  std::vector<double> values;
  values.reserve(n * n);
  for (const auto& [line, text] : rows) {
    const auto fields = split(text, ',');
    if (fields.size() != n) {
      fail(matrix_source, line, "expected " + std::to_string(n) + " entries, found " +
                                    std::to_string(fields.size()));
    }
    for (const auto& f : fields) {
      const double v = parse_number(f, matrix_source, line);
      if (v < 0.0) fail(matrix_source, line, "negative distance");
      values.push_back(v);
    }
  }
  return Dataset::from_matrix(std::move(values), n, labels, std::move(ids));
}

Dataset load_points_csv(const std::string& path, MetricKind metric) {
  auto in = open(path);
  return read_points_csv(in, metric, path);
}

Dataset load_matrix_csv(const std::string& matrix_path, const std::string& labels_path) {
  auto m = open(matrix_path);
  auto l = open(labels_path);
  return read_matrix_csv(m, l, matrix_path, labels_path);
}

namespace {

std::string joined_groups(const Dataset& ds, ElementId u) {
  std::string s;
  for (std::size_t g = 0; g < ds.group_count(); ++g) {
    if (!ds.in_group(u, g)) continue;
    if (!s.empty()) s += '|';
    s += ds.group_names()[g];
  }
  return s;
}

}  // namespace

void write_points_csv(std::ostream& out, const Dataset& ds) {
  if (!ds.has_points()) throw std::invalid_argument("write_points_csv: dataset has no feature vectors");
  out << "id,groups";
  for (std::size_t j = 0; j < ds.dim(); ++j) out << ",f" << (j + 1);
  out << '\n';
  for (ElementId u = 0; u < ds.size(); ++u) {
    out << ds.external_id(u) << ',' << joined_groups(ds, u);
    for (std::size_t j = 0; j < ds.dim(); ++j) out << ',' << format_number(ds.coordinate(u, j));
    out << '\n';
  }
}

void write_matrix_csv(std::ostream& matrix, std::ostream& labels, const Dataset& ds) {
  labels << "id,groups\n";
  for (ElementId u = 0; u < ds.size(); ++u) {
    labels << ds.external_id(u) << ',' << joined_groups(ds, u) << '\n';
    for (ElementId v = 0; v < ds.size(); ++v) {
      if (v > 0) matrix << ',';
      matrix << format_number(ds.distance(u, v));
    }
    matrix << '\n';
  }
}

bool same_dataset(const Dataset& a, const Dataset& b) {
  if (a.size() != b.size() || a.external_ids() != b.external_ids() ||
      a.group_names() != b.group_names() || a.mode() != b.mode() ||
      a.has_points() != b.has_points() || a.dim() != b.dim()) {
    return false;
  }
  if (a.has_points() && a.metric() != b.metric()) return false;
  for (ElementId u = 0; u < a.size(); ++u) {
    if (a.membership(u) != b.membership(u)) return false;
    if (a.has_points()) {
      for (std::size_t j = 0; j < a.dim(); ++j) {
        if (a.coordinate(u, j) != b.coordinate(u, j)) return false;
      }
    } else {
      for (ElementId v = 0; v < a.size(); ++v) {
        if (a.distance(u, v) != b.distance(u, v)) return false;
      }
    }
  }
  return true;
}

FairnessSpec parse_constraints(const std::string& text, const Dataset& ds, Mode mode) {
  FairnessSpec spec;
  spec.mode = mode;
  spec.counts.assign(ds.group_count(), 0);
  std::vector<bool> set(ds.group_count(), false);
  if (trim(text).empty()) return spec;
  for (const auto& item : split(text, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("constraint '" + item + "' is not name=count");
    const std::string name = trim(std::string_view(item).substr(0, eq));
    const std::string value = trim(std::string_view(item).substr(eq + 1));
    const auto g = ds.group_index(name);
    if (!g) throw ParseError("constraint names unknown group '" + name + "'");
    if (set[*g]) throw ParseError("group '" + name + "' constrained twice");
    int k = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), k);
    if (value.empty() || ec != std::errc() || ptr != value.data() + value.size() || k < 0) {
      throw ParseError("constraint for '" + name + "' is not a non-negative integer: '" + value + "'");
    }
    spec.counts[*g] = k;
    set[*g] = true;
  }
  return spec;
}

MetricKind parse_metric(const std::string& name) {
  if (name == "euclidean") return MetricKind::kEuclidean;
  if (name == "manhattan") return MetricKind::kManhattan;
  throw ParseError("unknown metric '" + name + "'");
}

namespace {

nlohmann::json number_or_null(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

nlohmann::json selected_list(const Dataset& ds, const std::vector<ElementId>& chosen) {
  nlohmann::json list = nlohmann::json::array();
  for (ElementId u : chosen) {
    nlohmann::json groups = nlohmann::json::array();
    for (std::size_t g = 0; g < ds.group_count(); ++g) {
      if (ds.in_group(u, g)) groups.push_back(ds.group_names()[g]);
    }
    list.push_back({{"id", ds.external_id(u)}, {"groups", groups}});
  }
  return list;
}

nlohmann::json counts_object(const Dataset& ds, const std::vector<int>& counts) {
  nlohmann::json obj = nlohmann::json::object();
  for (std::size_t g = 0; g < ds.group_count(); ++g) {
    obj[ds.group_names()[g]] = g < counts.size() ? counts[g] : 0;
  }
  return obj;
}

nlohmann::json diagnostics_object(const Diagnostics& d) {
  return {{"distance_evaluations", d.distance_evaluations},
          {"flow_networks", d.flow_networks},
          {"component_checks", d.component_checks},
          {"guesses_tried", d.guesses_tried},
          {"non_monotone", d.non_monotone}};
}

double timing(const RecordOptions& opt) { return opt.include_timing ? opt.wall_ms : 0.0; }

}  // namespace

nlohmann::json selection_record(const Dataset& ds, const Selection& sel, const RecordOptions& opt) {
  nlohmann::json j;
  j["algorithm"] = sel.algorithm;
  j["gamma_used"] = sel.gamma_used ? number_or_null(*sel.gamma_used) : nlohmann::json(nullptr);
  j["diversity"] = sel.chosen.empty() ? nlohmann::json(nullptr) : number_or_null(sel.diversity);
  j["selected"] = selected_list(ds, sel.chosen);
  j["per_group_counts"] = counts_object(ds, sel.per_group_counts);
  j["probes"] = sel.probes;
  j["aborted"] = sel.aborted;
  j["wall_ms"] = timing(opt);
  j["diagnostics"] = diagnostics_object(sel.diagnostics);
  return j;
}

nlohmann::json cluster_record(const Dataset& ds, const ClusterResult& r, const RecordOptions& opt) {
  nlohmann::json j;
  j["algorithm"] = r.algorithm;
  j["gamma_used"] = r.gamma_used ? number_or_null(*r.gamma_used) : nlohmann::json(nullptr);
  j["radius"] = r.radius;
  j["selected"] = selected_list(ds, r.centers);
  j["per_group_counts"] = counts_object(ds, r.per_group_counts);
  j["probes"] = r.probes;
  j["aborted"] = r.aborted;
  j["wall_ms"] = timing(opt);
  j["diagnostics"] = diagnostics_object(r.diagnostics);
  return j;
}

nlohmann::json oracle_record(const Dataset& ds, const OracleResult& r, bool kcenter,
                             const RecordOptions& opt) {
  nlohmann::json j;
  j["algorithm"] = kcenter ? "oracle-kcenter" : "oracle";
  j["gamma_used"] = nullptr;
  j[kcenter ? "radius" : "diversity"] = number_or_null(r.opt_value);
  j["selected"] = selected_list(ds, r.witness);
  j["per_group_counts"] = counts_object(ds, group_counts(ds, r.witness));
  j["probes"] = 0;
  j["aborted"] = false;
  j["wall_ms"] = timing(opt);
  j["enumerated"] = r.enumerated;
  return j;
}

}  // namespace fairdiv
