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

#ifndef OAAS_MODEL_DAG_H_
#define OAAS_MODEL_DAG_H_

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace oaas::model {

/// Directed edge producer -> consumer between node indices.
using Edge = std::pair<size_t, size_t>;

/// Kahn's algorithm, smallest ready index first. nullopt when cyclic.
std::optional<std::vector<size_t>> TopologicalSort(size_t n,
                                                   const std::vector<Edge>& edges);

/// Marks every node that lies on a directed cycle (including self-loops).
std::vector<bool> NodesOnCycles(size_t n, const std::vector<Edge>& edges);

/// All nodes reachable from `start` (excluding `start` unless on a cycle).
std::vector<size_t> Descendants(size_t n, const std::vector<Edge>& edges,
                                size_t start);

}  // namespace oaas::model

#endif  // OAAS_MODEL_DAG_H_
