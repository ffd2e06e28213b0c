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

// Integer max flow and the class/component assignment network built on it.

#ifndef FAIRDIV_FLOW_NETWORK_HPP_
#define FAIRDIV_FLOW_NETWORK_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace fairdiv {

class FlowNetwork {
 public:
  struct Edge {
    std::size_t from;
    std::size_t to;
    std::int64_t capacity;
  };

  explicit FlowNetwork(std::size_t node_count) : node_count_(node_count) {}

  // Returns the edge index. Throws std::invalid_argument on bad endpoints or
  // negative capacity.
  std::size_t add_edge(std::size_t from, std::size_t to, std::int64_t capacity);

  std::size_t node_count() const { return node_count_; }
  const std::vector<Edge>& edges() const { return edges_; }

 private:
  std::size_t node_count_;
  std::vector<Edge> edges_;
};

struct FlowResult {
  std::int64_t value = 0;
  std::vector<std::int64_t> edge_flow;  // aligned with FlowNetwork::edges()
};

// Exact maximum source-sink flow (Dinic). Every edge flow is an integer in
// [0, capacity].
FlowResult max_flow(const FlowNetwork& net, std::size_t source, std::size_t sink);

// Empty string when `flow` respects capacities, is conserved at every node
// other than source and sink, and its value equals the net outflow of the
// source; otherwise a description of the first problem found.
std::string check_flow(const FlowNetwork& net, std::size_t source, std::size_t sink,
                       const FlowResult& flow);

// Classes (groups or label sets) with capacities, components with unit
// capacity to the sink, and a unit edge class -> component wherever the
// component holds a candidate of that class.
struct AssignmentProblem {
  std::vector<std::int64_t> class_capacity;
  std::size_t component_count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> incidences;  // (class, component)
};

struct Assignment {
  std::int64_t value = 0;
  std::vector<std::pair<std::size_t, std::size_t>> used;  // incidences carrying flow
};

// Builds the network source -> classes -> components -> sink, solves it and
// verifies the flow; throws InvariantViolation if the check fails.
Assignment solve_assignment(const AssignmentProblem& problem);

// Process-wide totals over every solve_assignment call: networks whose flow
// passed check_flow, edges examined, and networks that failed it.
struct FlowAudit {
  std::uint64_t networks = 0;
  std::uint64_t edges = 0;
  std::uint64_t failures = 0;
};
FlowAudit flow_audit();
void reset_flow_audit();

}  // namespace fairdiv

#endif  // FAIRDIV_FLOW_NETWORK_HPP_
