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

#ifndef OAAS_CONTROL_STORE_REGISTRY_H_
#define OAAS_CONTROL_STORE_REGISTRY_H_

#include <memory>

#include "oaas/kv/spec_cache.h"
#include "oaas/model/registry.h"

namespace oaas::control {

/// Spec lookups against persisted class and function records, through a
/// component's spec cache. Records hold the spec with qualified references.
class StoreRegistry final : public model::SpecRegistry {
 public:
  explicit StoreRegistry(std::shared_ptr<kv::SpecCache> cache)
      : cache_(std::move(cache)) {}

  std::optional<model::ClassSpec> FindClass(std::string_view qualified) const override;
  std::optional<model::FunctionSpec> FindFunction(
      std::string_view qualified) const override;

  /// Record version of a class, 0 when absent.
  uint64_t ClassVersion(std::string_view qualified) const;

  kv::SpecCache& cache() const { return *cache_; }

 private:
  std::shared_ptr<kv::SpecCache> cache_;
};

}  // namespace oaas::control

#endif  // OAAS_CONTROL_STORE_REGISTRY_H_
