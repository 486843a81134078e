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

#ifndef OAAS_MODEL_PACKAGE_H_
#define OAAS_MODEL_PACKAGE_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace oaas::model {

enum class StateForm { kStructured, kUnstructured };
enum class Access { kPublic, kInternal };
enum class FunctionKind { kTask, kMacro };
enum class ExecutorMode { kBuiltin, kRemoteHttp };

struct StateKeySpec {
  std::string key;
  StateForm form = StateForm::kStructured;
  // Blob-store bucket; set iff form is kUnstructured.
  std::optional<std::string> provider;

  bool operator==(const StateKeySpec&) const = default;
};

struct FunctionBinding {
  std::string name;
  Access access = Access::kPublic;
  std::string function_ref;
  std::string output_class;

  bool operator==(const FunctionBinding&) const = default;
};

struct ClassSpec {
  std::string name;
  std::optional<std::string> parent;
  std::vector<StateKeySpec> state_keys;
  std::vector<FunctionBinding> bindings;

  bool operator==(const ClassSpec&) const = default;
};

struct ExecutorBinding {
  ExecutorMode mode = ExecutorMode::kBuiltin;
  // Builtin function name, or endpoint base URL for remote-http.
  std::string target;

  bool operator==(const ExecutorBinding&) const = default;
};

/// One call inside a macro. `target` and each entry of `inputs` is a
/// reference: "$self", "$input[i]", or the `as` name of another step.
/// Argument values are literals or "$arg[name]" substitutions.
struct MacroStep {
  std::string as;
  std::string target;
  std::vector<std::string> inputs;
  std::string function;
  std::map<std::string, std::string> args;

  bool operator==(const MacroStep&) const = default;
};

struct MacroSpec {
  std::vector<MacroStep> steps;
  std::string output;

  bool operator==(const MacroSpec&) const = default;
};

struct FunctionSpec {
  std::string name;
  FunctionKind kind = FunctionKind::kTask;
  std::optional<ExecutorBinding> executor;
  std::optional<MacroSpec> macro;

  bool operator==(const FunctionSpec&) const = default;
};

struct PackageSpec {
  std::string name;
  std::vector<ClassSpec> classes;
  std::vector<FunctionSpec> functions;

  bool operator==(const PackageSpec&) const = default;
};

std::string_view ToString(StateForm v);
std::string_view ToString(Access v);
std::string_view ToString(FunctionKind v);
std::string_view ToString(ExecutorMode v);

/// "pkg.name" for an unqualified name, unchanged when already qualified.
std::string Qualify(std::string_view package, std::string_view name);
/// Package part of a qualified name ("" when unqualified).
std::string PackageOf(std::string_view qualified);

/// Rewrites every class/function reference in the package (parent,
/// functionRef, outputClass) to qualified form.
PackageSpec QualifyReferences(PackageSpec pkg);

nlohmann::json ToJson(const StateKeySpec& v);
nlohmann::json ToJson(const FunctionBinding& v);
nlohmann::json ToJson(const ClassSpec& v);
nlohmann::json ToJson(const MacroStep& v);
nlohmann::json ToJson(const MacroSpec& v);
nlohmann::json ToJson(const FunctionSpec& v);
nlohmann::json ToJson(const PackageSpec& v);

/// Strict decoders. Throw Error(kSchema) naming the offending path, which is
/// prefixed by `path`.
ClassSpec ClassFromJson(const nlohmann::json& j, const std::string& path = "");
FunctionSpec FunctionFromJson(const nlohmann::json& j,
                              const std::string& path = "");
PackageSpec PackageFromJson(const nlohmann::json& j);

}  // namespace oaas::model

#endif  // OAAS_MODEL_PACKAGE_H_
