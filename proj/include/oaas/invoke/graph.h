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

#ifndef OAAS_INVOKE_GRAPH_H_
#define OAAS_INVOKE_GRAPH_H_

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace oaas::invoke {

enum class NodeStatus { kWaiting, kReady, kRunning, kCompleted, kFailed, kSkipped };

std::string_view ToString(NodeStatus s);
NodeStatus NodeStatusFromString(std::string_view s);

inline bool IsTerminal(NodeStatus s) {
  return s == NodeStatus::kCompleted || s == NodeStatus::kFailed ||
         s == NodeStatus::kSkipped;
}

struct GraphNode {
  std::string binding;   // binding name on the target's class
  std::string function;  // qualified task function
  // Object ids the task reads, target first. Producer outputs are
  // allocated up front, so every id is known when the graph is built.
  std::vector<std::string> sources;
  std::map<std::string, std::string> args;  // after $arg substitution
  std::string output_object_id;
  std::string output_class;
  NodeStatus status = NodeStatus::kWaiting;
  std::optional<std::string> failure_cause;

  bool operator==(const GraphNode&) const = default;
};

/// A macro invocation's persisted state. Nodes are keyed by step name;
/// map order is the dispatch tie-break order.
struct InvocationGraph {
  std::string graph_id;
  std::string root_output_object_id;
  std::string output_node;
  std::string macro;  // qualified macro function
  std::map<std::string, GraphNode> nodes;
  std::vector<std::pair<std::string, std::string>> edges;  // producer, consumer

  std::vector<std::string> Producers(const std::string& node) const;
  /// Transitive consumers of `node`.
  std::vector<std::string> Descendants(const std::string& node) const;

  nlohmann::json ToJson() const;
  static InvocationGraph FromJson(const nlohmann::json& j);
  bool operator==(const InvocationGraph&) const = default;
};

}  // namespace oaas::invoke

#endif  // OAAS_INVOKE_GRAPH_H_
