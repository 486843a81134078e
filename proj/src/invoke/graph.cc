// Copyright 2026 The OaaS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "oaas/invoke/graph.h"

#include <deque>
#include <set>

#include "oaas/common/error.h"

namespace oaas::invoke {

using nlohmann::json;

std::string_view ToString(NodeStatus s) {
  switch (s) {
    case NodeStatus::kWaiting:
      return "WAITING";
    case NodeStatus::kReady:
      return "READY";
    case NodeStatus::kRunning:
      return "RUNNING";
    case NodeStatus::kCompleted:
      return "COMPLETED";
    case NodeStatus::kFailed:
      return "FAILED";
    case NodeStatus::kSkipped:
      return "SKIPPED";
  }
  return "WAITING";
}

NodeStatus NodeStatusFromString(std::string_view s) {
  for (auto v : {NodeStatus::kWaiting, NodeStatus::kReady, NodeStatus::kRunning,
                 NodeStatus::kCompleted, NodeStatus::kFailed, NodeStatus::kSkipped}) {
    if (ToString(v) == s) return v;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown node status '" + std::string(s) + "'");
}

std::vector<std::string> InvocationGraph::Producers(const std::string& node) const {
  std::vector<std::string> out;
  for (const auto& [from, to] : edges) {
    if (to == node) out.push_back(from);
  }
  return out;
}

std::vector<std::string> InvocationGraph::Descendants(const std::string& node) const {
  std::set<std::string> seen;
  std::deque<std::string> frontier{node};
  while (!frontier.empty()) {
    const std::string cur = frontier.front();
    frontier.pop_front();
    for (const auto& [from, to] : edges) {
      if (from == cur && seen.insert(to).second) frontier.push_back(to);
    }
  }
  return {seen.begin(), seen.end()};
}

json InvocationGraph::ToJson() const {
  json n = json::object();
  for (const auto& [name, node] : nodes) {
    json j = {{"binding", node.binding},
              {"function", node.function},
              {"sources", node.sources},
              {"args", node.args},
              {"outputObjectId", node.output_object_id},
              {"outputClass", node.output_class},
              {"status", ToString(node.status)}};
    if (node.failure_cause) j["failureCause"] = *node.failure_cause;
    n[name] = std::move(j);
  }
  json e = json::array();
  for (const auto& [from, to] : edges) e.push_back({from, to});
  return {{"graphId", graph_id},
          {"rootOutputObjectId", root_output_object_id},
          {"outputNode", output_node},
          {"macro", macro},
          {"nodes", std::move(n)},
          {"edges", std::move(e)}};
}

InvocationGraph InvocationGraph::FromJson(const json& j) {
  InvocationGraph g;
  g.graph_id = j.at("graphId").get<std::string>();
  g.root_output_object_id = j.at("rootOutputObjectId").get<std::string>();
  g.output_node = j.at("outputNode").get<std::string>();
  g.macro = j.value("macro", "");
  for (const auto& [name, v] : j.at("nodes").items()) {
    GraphNode node;
    node.binding = v.at("binding").get<std::string>();
    node.function = v.at("function").get<std::string>();
    node.sources = v.at("sources").get<std::vector<std::string>>();
    node.args = v.at("args").get<std::map<std::string, std::string>>();
    node.output_object_id = v.at("outputObjectId").get<std::string>();
    node.output_class = v.at("outputClass").get<std::string>();
    node.status = NodeStatusFromString(v.at("status").get<std::string>());
    if (v.contains("failureCause")) node.failure_cause = v["failureCause"].get<std::string>();
    g.nodes.emplace(name, std::move(node));
  }
  for (const auto& e : j.at("edges")) {
    g.edges.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
  }
  return g;
}

}  // namespace oaas::invoke
