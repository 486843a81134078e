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

#ifndef OAAS_MODEL_MACRO_H_
#define OAAS_MODEL_MACRO_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oaas/model/dag.h"
#include "oaas/model/package.h"

namespace oaas::model {

struct StepRef {
  enum class Kind { kSelf, kInput, kStep };
  Kind kind = Kind::kSelf;
  size_t input_index = 0;
  std::string step;
};

/// "$self", "$input[<n>]", or a step name. nullopt on anything else.
std::optional<StepRef> ParseStepRef(std::string_view ref);

/// Name inside "$arg[<name>]"; nullopt for literals. Throws
/// Error(kInvalidArgument) for a value starting with '$' that is not a
/// well-formed substitution.
std::optional<std::string> ParseArgSubstitution(std::string_view value);

/// Applies "$arg[name]" substitutions. Missing invocation args throw
/// Error(kInvalidArgument).
std::map<std::string, std::string> ExpandArgs(
    const std::map<std::string, std::string>& step_args,
    const std::map<std::string, std::string>& invocation_args);

/// Step-to-step dependency edges (producer -> consumer) by step index,
/// including forward references. Unresolvable references are skipped.
std::vector<Edge> StepEdges(const MacroSpec& macro);

}  // namespace oaas::model

#endif  // OAAS_MODEL_MACRO_H_
