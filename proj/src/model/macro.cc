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

#include "oaas/model/macro.h"

#include <charconv>

#include "oaas/common/error.h"
#include "oaas/common/ids.h"

namespace oaas::model {

std::optional<StepRef> ParseStepRef(std::string_view ref) {
  if (ref == "$self") return StepRef{StepRef::Kind::kSelf, 0, ""};
  constexpr std::string_view kInput = "$input[";
  if (ref.starts_with(kInput) && ref.ends_with("]")) {
    const auto digits = ref.substr(kInput.size(), ref.size() - kInput.size() - 1);
    if (digits.empty()) return std::nullopt;
    size_t index = 0;
    auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), index);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
      return std::nullopt;
    }
    return StepRef{StepRef::Kind::kInput, index, ""};
  }
  if (IsSimpleName(ref)) return StepRef{StepRef::Kind::kStep, 0, std::string(ref)};
  return std::nullopt;
}

std::optional<std::string> ParseArgSubstitution(std::string_view value) {
  if (!value.starts_with('$')) return std::nullopt;
  constexpr std::string_view kArg = "$arg[";
  if (value.starts_with(kArg) && value.ends_with("]")) {
    auto name = value.substr(kArg.size(), value.size() - kArg.size() - 1);
    if (IsIdentifier(name)) return std::string(name);
  }
  throw Error(ErrorCode::kInvalidArgument,
              "bad substitution '" + std::string(value) + "'");
}

std::map<std::string, std::string> ExpandArgs(
    const std::map<std::string, std::string>& step_args,
    const std::map<std::string, std::string>& invocation_args) {
  std::map<std::string, std::string> out;
  for (const auto& [k, v] : step_args) {
    if (auto name = ParseArgSubstitution(v)) {
      auto it = invocation_args.find(*name);
      if (it == invocation_args.end()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "missing invocation argument '" + *name + "'");
      }
      out[k] = it->second;
    } else {
      out[k] = v;
    }
  }
  return out;
}

std::vector<Edge> StepEdges(const MacroSpec& macro) {
  std::map<std::string, size_t, std::less<>> index;
  for (size_t i = 0; i < macro.steps.size(); ++i) index[macro.steps[i].as] = i;
  std::vector<Edge> edges;
  for (size_t i = 0; i < macro.steps.size(); ++i) {
    const auto& step = macro.steps[i];
    auto add = [&](std::string_view ref) {
      auto r = ParseStepRef(ref);
      if (!r || r->kind != StepRef::Kind::kStep) return;
      auto it = index.find(r->step);
      if (it == index.end()) return;
      const Edge e{it->second, i};
      for (const auto& existing : edges) {
        if (existing == e) return;
      }
      edges.push_back(e);
    };
    add(step.target);
    for (const auto& in : step.inputs) add(in);
  }
  return edges;
}

}  // namespace oaas::model
