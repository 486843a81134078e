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

#include "oaas/control/store_registry.h"

#include "oaas/model/package.h"

namespace oaas::control {

std::optional<model::ClassSpec> StoreRegistry::FindClass(
    std::string_view qualified) const {
  auto rec = cache_->Find(kv::RecordKind::kClass, std::string(qualified));
  if (!rec) return std::nullopt;
  return model::ClassFromJson(rec->value);
}

std::optional<model::FunctionSpec> StoreRegistry::FindFunction(
    std::string_view qualified) const {
  auto rec = cache_->Find(kv::RecordKind::kFunction, std::string(qualified));
  if (!rec) return std::nullopt;
  return model::FunctionFromJson(rec->value);
}

uint64_t StoreRegistry::ClassVersion(std::string_view qualified) const {
  auto rec = cache_->Find(kv::RecordKind::kClass, std::string(qualified));
  return rec ? rec->version : 0;
}

}  // namespace oaas::control
