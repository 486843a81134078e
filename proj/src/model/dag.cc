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

#include "oaas/model/dag.h"

#include <deque>
#include <functional>
#include <queue>

namespace oaas::model {

std::optional<std::vector<size_t>> TopologicalSort(
    size_t n, const std::vector<Edge>& edges) {
  std::vector<std::vector<size_t>> out(n);
  std::vector<size_t> indegree(n, 0);
  for (const auto& [from, to] : edges) {
    out[from].push_back(to);
    ++indegree[to];
  }
  std::priority_queue<size_t, std::vector<size_t>, std::greater<>> ready;
  for (size_t i = 0; i < n; ++i) {
    if (indegree[i] == 0) ready.push(i);
  }
  std::vector<size_t> order;
  order.reserve(n);
  while (!ready.empty()) {
    const size_t v = ready.top();
    ready.pop();
    order.push_back(v);
    for (size_t w : out[v]) {
      if (--indegree[w] == 0) ready.push(w);
    }
  }
  if (order.size() != n) return std::nullopt;
  return order;
}

std::vector<size_t> Descendants(size_t n, const std::vector<Edge>& edges,
                                size_t start) {
  std::vector<std::vector<size_t>> out(n);
  for (const auto& [from, to] : edges) out[from].push_back(to);
  std::vector<bool> seen(n, false);
  std::deque<size_t> frontier(out[start].begin(), out[start].end());
  std::vector<size_t> result;
  while (!frontier.empty()) {
    const size_t v = frontier.front();
    frontier.pop_front();
    if (seen[v]) continue;
    seen[v] = true;
    result.push_back(v);
    for (size_t w : out[v]) frontier.push_back(w);
  }
  return result;
}

std::vector<bool> NodesOnCycles(size_t n, const std::vector<Edge>& edges) {
  std::vector<bool> on_cycle(n, false);
  for (size_t v = 0; v < n; ++v) {
    for (size_t d : Descendants(n, edges, v)) {
      if (d == v) on_cycle[v] = true;
    }
  }
  return on_cycle;
}

}  // namespace oaas::model
