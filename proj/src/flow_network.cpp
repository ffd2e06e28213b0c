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

#include "fairdiv/flow_network.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <queue>
#include <stdexcept>

#include "fairdiv/core.hpp"

namespace fairdiv {

std::size_t FlowNetwork::add_edge(std::size_t from, std::size_t to, std::int64_t capacity) {
  if (from >= node_count_ || to >= node_count_) throw std::invalid_argument("flow edge endpoint out of range");
  if (capacity < 0) throw std::invalid_argument("negative flow capacity");
  edges_.push_back({from, to, capacity});
  return edges_.size() - 1;
}

namespace {

// Residual graph: arc 2e is edge e forward, arc 2e+1 its reverse.
class Dinic {
 public:
  Dinic(const FlowNetwork& net, std::size_t source, std::size_t sink)
      : source_(source), sink_(sink), adj_(net.node_count()), level_(net.node_count()),
        cursor_(net.node_count()) {
    const auto& edges = net.edges();
    to_.reserve(edges.size() * 2);
    residual_.reserve(edges.size() * 2);
    for (std::size_t e = 0; e < edges.size(); ++e) {
      adj_[edges[e].from].push_back(to_.size());
      to_.push_back(edges[e].to);
      residual_.push_back(edges[e].capacity);
      adj_[edges[e].to].push_back(to_.size());
      to_.push_back(edges[e].from);
      residual_.push_back(0);
    }
  }

  std::int64_t run() {
    std::int64_t total = 0;
    while (build_levels()) {
      std::fill(cursor_.begin(), cursor_.end(), 0);
      while (std::int64_t pushed = push(source_, std::numeric_limits<std::int64_t>::max())) {
        total += pushed;
      }
    }
    return total;
  }

  // Flow on original edge e = residual of its reverse arc.
  std::int64_t flow_on(std::size_t e) const { return residual_[2 * e + 1]; }

 private:
  bool build_levels() {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<std::size_t> q;
    level_[source_] = 0;
    q.push(source_);
    while (!q.empty()) {
      const std::size_t v = q.front();
      q.pop();
      for (std::size_t arc : adj_[v]) {
        if (residual_[arc] > 0 && level_[to_[arc]] < 0) {
          level_[to_[arc]] = level_[v] + 1;
          q.push(to_[arc]);
        }
      }
    }
    return level_[sink_] >= 0;
  }

  std::int64_t push(std::size_t v, std::int64_t limit) {
    if (v == sink_) return limit;
    for (std::size_t& i = cursor_[v]; i < adj_[v].size(); ++i) {
      const std::size_t arc = adj_[v][i];
      const std::size_t w = to_[arc];
      if (residual_[arc] <= 0 || level_[w] != level_[v] + 1) continue;
      const std::int64_t got = push(w, std::min(limit, residual_[arc]));
      if (got > 0) {
        residual_[arc] -= got;
        residual_[arc ^ 1U] += got;
        return got;
      }
    }
    return 0;
  }

  std::size_t source_;
  std::size_t sink_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::size_t> to_;
  std::vector<std::int64_t> residual_;
  std::vector<int> level_;
  std::vector<std::size_t> cursor_;
};

std::atomic<std::uint64_t> g_audit_networks{0};
std::atomic<std::uint64_t> g_audit_edges{0};
std::atomic<std::uint64_t> g_audit_failures{0};

}  // namespace

FlowResult max_flow(const FlowNetwork& net, std::size_t source, std::size_t sink) {
  if (source >= net.node_count() || sink >= net.node_count() || source == sink) {
    throw std::invalid_argument("malformed flow network: bad source/sink");
  }
  Dinic dinic(net, source, sink);
  FlowResult result;
  result.value = dinic.run();
  result.edge_flow.resize(net.edges().size());
  for (std::size_t e = 0; e < net.edges().size(); ++e) result.edge_flow[e] = dinic.flow_on(e);
  return result;
}

std::string check_flow(const FlowNetwork& net, std::size_t source, std::size_t sink,
                       const FlowResult& flow) {
  const auto& edges = net.edges();
  if (flow.edge_flow.size() != edges.size()) return "edge flow vector has wrong length";
  std::vector<std::int64_t> balance(net.node_count(), 0);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const std::int64_t f = flow.edge_flow[e];
    if (f < 0 || f > edges[e].capacity) {
      return "edge " + std::to_string(e) + " carries " + std::to_string(f) + " outside [0, " +
             std::to_string(edges[e].capacity) + "]";
    }
    balance[edges[e].from] -= f;
    balance[edges[e].to] += f;
  }
  for (std::size_t v = 0; v < net.node_count(); ++v) {
    if (v != source && v != sink && balance[v] != 0) {
      return "flow not conserved at node " + std::to_string(v);
    }
  }
  if (-balance[source] != flow.value || balance[sink] != flow.value) {
    return "flow value does not match source outflow / sink inflow";
  }
  return {};
}

Assignment solve_assignment(const AssignmentProblem& problem) {
  const std::size_t classes = problem.class_capacity.size();
  const std::size_t source = 0;
  const std::size_t first_component = 1 + classes;
  const std::size_t sink = first_component + problem.component_count;
  FlowNetwork net(sink + 1);
  for (std::size_t c = 0; c < classes; ++c) net.add_edge(source, 1 + c, problem.class_capacity[c]);
  for (std::size_t j = 0; j < problem.component_count; ++j) net.add_edge(first_component + j, sink, 1);
  const std::size_t first_incidence = net.edges().size();
  for (const auto& [c, j] : problem.incidences) {
    if (c >= classes || j >= problem.component_count) throw std::invalid_argument("incidence out of range");
    net.add_edge(1 + c, first_component + j, 1);
  }

  const FlowResult flow = max_flow(net, source, sink);
  g_audit_edges.fetch_add(net.edges().size(), std::memory_order_relaxed);
  if (auto problem_text = check_flow(net, source, sink, flow); !problem_text.empty()) {
    g_audit_failures.fetch_add(1, std::memory_order_relaxed);
    throw InvariantViolation("assignment flow check failed: " + problem_text);
  }
  g_audit_networks.fetch_add(1, std::memory_order_relaxed);
  Assignment out;
  out.value = flow.value;
  for (std::size_t i = 0; i < problem.incidences.size(); ++i) {
    if (flow.edge_flow[first_incidence + i] > 0) out.used.push_back(problem.incidences[i]);
  }
  return out;
}

FlowAudit flow_audit() {
  return {g_audit_networks.load(std::memory_order_relaxed), g_audit_edges.load(std::memory_order_relaxed),
          g_audit_failures.load(std::memory_order_relaxed)};
}

void reset_flow_audit() {
  g_audit_networks.store(0, std::memory_order_relaxed);
  g_audit_edges.store(0, std::memory_order_relaxed);
  g_audit_failures.store(0, std::memory_order_relaxed);
}

}  // namespace fairdiv
