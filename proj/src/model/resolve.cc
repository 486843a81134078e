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

#include "oaas/model/resolve.h"

#include <algorithm>
#include <set>

#include "oaas/common/error.h"

namespace oaas::model {
namespace {

template <typename Entry, typename NameOf>
void AppendShadowing(std::vector<Entry>& acc, std::vector<Entry> own,
                     NameOf name_of) {
  for (auto& e : own) {
    std::erase_if(acc, [&](const Entry& a) { return name_of(a) == name_of(e); });
    acc.push_back(std::move(e));
  }
}

}  // namespace

const ResolvedBinding* ResolvedClass::FindBinding(std::string_view binding) const {
  for (const auto& b : bindings) {
    if (b.binding.name == binding) return &b;
  }
  return nullptr;
}

const ResolvedStateKey* ResolvedClass::FindStateKey(std::string_view key) const {
  for (const auto& s : state_keys) {
    if (s.spec.key == key) return &s;
  }
  return nullptr;
}

bool ResolvedClass::HasStructuredKey() const {
  return std::any_of(state_keys.begin(), state_keys.end(), [](const auto& s) {
    return s.spec.form == StateForm::kStructured;
  });
}

ClassSpec ResolvedClass::Flatten() const {
  ClassSpec c;
  const auto dot = name.find('.');
  c.name = dot == std::string::npos ? name : name.substr(dot + 1);
  for (const auto& s : state_keys) c.state_keys.push_back(s.spec);
  for (const auto& b : bindings) c.bindings.push_back(b.binding);
  return c;
}

ResolvedClass ResolveClass(std::string_view qualified,
                           const SpecRegistry& registry) {
  std::vector<std::pair<std::string, ClassSpec>> chain;
  std::set<std::string, std::less<>> seen;
  std::string current(qualified);
  while (true) {
    if (!seen.insert(current).second) {
      throw Error(ErrorCode::kCyclicInheritance,
                  "cyclic inheritance through '" + current + "'");
    }
    auto spec = registry.FindClass(current);
    if (!spec) throw Error(ErrorCode::kUnknownClass, "unknown class '" + current + "'");
    std::optional<std::string> parent = spec->parent;
    chain.emplace_back(current, std::move(*spec));
    if (!parent) break;
    current = *parent;
  }

  ResolvedClass out;
  out.name = std::string(qualified);
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    const auto& [name, spec] = *it;
    out.lineage.push_back(name);
    std::vector<ResolvedStateKey> keys;
    for (const auto& s : spec.state_keys) keys.push_back({s, name});
    AppendShadowing(out.state_keys, std::move(keys),
                    [](const ResolvedStateKey& s) { return s.spec.key; });
    std::vector<ResolvedBinding> bindings;
    for (const auto& b : spec.bindings) bindings.push_back({b, name});
    AppendShadowing(out.bindings, std::move(bindings),
                    [](const ResolvedBinding& b) { return b.binding.name; });
  }
  return out;
}

}  // namespace oaas::model
