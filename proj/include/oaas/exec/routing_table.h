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

#ifndef OAAS_EXEC_ROUTING_TABLE_H_
#define OAAS_EXEC_ROUTING_TABLE_H_

#include <map>
#include <optional>
#include <shared_mutex>
#include <string>

#include "oaas/model/package.h"

namespace oaas::exec {

struct Route {
  model::ExecutorBinding binding;
  uint64_t spec_version = 0;

  bool operator==(const Route&) const = default;
};

/// Qualified function name -> executor binding, for ready deployments only.
class RoutingTable {
 public:
  /// Inserts or replaces. A route older than the current one is ignored so
  /// that a redelivered stale provision request cannot roll back an update.
  void Set(const std::string& function, Route route);
  void Remove(const std::string& function);
  std::optional<Route> Find(std::string_view function) const;
  size_t size() const;

 private:
  mutable std::shared_mutex mu_;
  std::map<std::string, Route, std::less<>> routes_;
};

}  // namespace oaas::exec

#endif  // OAAS_EXEC_ROUTING_TABLE_H_
