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

#ifndef OAAS_MODEL_RESOLVE_H_
#define OAAS_MODEL_RESOLVE_H_

#include <string>
#include <string_view>
#include <vector>

#include "oaas/model/package.h"
#include "oaas/model/registry.h"

namespace oaas::model {

struct ResolvedStateKey {
  StateKeySpec spec;
  std::string declared_in;  // qualified class name

  bool operator==(const ResolvedStateKey&) const = default;
};

struct ResolvedBinding {
  FunctionBinding binding;
  std::string declared_in;

  bool operator==(const ResolvedBinding&) const = default;
};

/// A class with its ancestor chain flattened. Entries are ordered ancestors
/// first, then the class itself; an entry shadowed by a descendant's
/// same-named entry is dropped.
struct ResolvedClass {
  std::string name;                  // qualified
  std::vector<std::string> lineage;  // root ancestor .. name
  std::vector<ResolvedStateKey> state_keys;
  std::vector<ResolvedBinding> bindings;

  const ResolvedBinding* FindBinding(std::string_view binding) const;
  const ResolvedStateKey* FindStateKey(std::string_view key) const;
  bool HasStructuredKey() const;

  /// Parentless ClassSpec with the flattened entries (unqualified name).
  ClassSpec Flatten() const;

  bool operator==(const ResolvedClass&) const = default;
};

/// Throws Error(kUnknownClass) for a missing class or ancestor and
/// Error(kCyclicInheritance) for a looping parent chain.
ResolvedClass ResolveClass(std::string_view qualified,
                           const SpecRegistry& registry);

}  // namespace oaas::model

#endif  // OAAS_MODEL_RESOLVE_H_
