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

#include "oaas/exec/routing_table.h"

#include <mutex>

namespace oaas::exec {

void RoutingTable::Set(const std::string& function, Route route) {
  std::unique_lock lock(mu_);
  auto it = routes_.find(function);
  if (it != routes_.end() && it->second.spec_version > route.spec_version) return;
  routes_[function] = std::move(route);
}

void RoutingTable::Remove(const std::string& function) {
  std::unique_lock lock(mu_);
  routes_.erase(function);
}

std::optional<Route> RoutingTable::Find(std::string_view function) const {
  std::shared_lock lock(mu_);
  auto it = routes_.find(function);
  if (it == routes_.end()) return std::nullopt;
  return it->second;
}

size_t RoutingTable::size() const {
  std::shared_lock lock(mu_);
  return routes_.size();
}

}  // namespace oaas::exec
