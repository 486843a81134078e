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

#include "oaas/model/registry.h"

namespace oaas::model {

void InMemoryRegistry::AddPackage(const PackageSpec& pkg) {
  const PackageSpec q = QualifyReferences(pkg);
  for (const auto& c : q.classes) classes_[Qualify(q.name, c.name)] = c;
  for (const auto& f : q.functions) functions_[Qualify(q.name, f.name)] = f;
}

std::optional<ClassSpec> InMemoryRegistry::FindClass(
    std::string_view qualified) const {
  auto it = classes_.find(qualified);
  if (it == classes_.end()) return std::nullopt;
  return it->second;
}

std::optional<FunctionSpec> InMemoryRegistry::FindFunction(
    std::string_view qualified) const {
  auto it = functions_.find(qualified);
  if (it == functions_.end()) return std::nullopt;
  return it->second;
}

OverlayRegistry::OverlayRegistry(const PackageSpec& pkg,
                                 const SpecRegistry& base)
    : base_(base) {
  local_.AddPackage(pkg);
}

std::optional<ClassSpec> OverlayRegistry::FindClass(
    std::string_view qualified) const {
  if (auto c = local_.FindClass(qualified)) return c;
  return base_.FindClass(qualified);
}

std::optional<FunctionSpec> OverlayRegistry::FindFunction(
    std::string_view qualified) const {
  if (auto f = local_.FindFunction(qualified)) return f;
  return base_.FindFunction(qualified);
}

}  // namespace oaas::model
