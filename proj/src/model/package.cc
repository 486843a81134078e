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

#include "oaas/model/package.h"

#include <set>
#include <utility>

#include "oaas/common/error.h"
#include "oaas/common/ids.h"

namespace oaas::model {
namespace {

using nlohmann::json;

[[noreturn]] void SchemaFail(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::kSchema, path.empty() ? msg : path + ": " + msg,
              {{"path", path}});
}

std::string Join(const std::string& path, std::string_view field) {
  if (path.empty()) return std::string(field);
  return path + "." + std::string(field);
}

std::string Index(const std::string& path, size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

// Reads fields out of one JSON object and rejects anything left unread.
class FieldReader {
 public:
  FieldReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) SchemaFail(path_, "expected a mapping");
  }

  const json* Find(std::string_view field) {
    seen_.emplace(field);
    auto it = j_.find(std::string(field));
    if (it == j_.end() || it->is_null()) return nullptr;
    return &*it;
  }

  std::string RequiredString(std::string_view field) {
    const json* v = Find(field);
    if (v == nullptr) SchemaFail(Join(path_, field), "missing required field");
    return AsString(*v, Join(path_, field));
  }

  std::optional<std::string> OptionalString(std::string_view field) {
    const json* v = Find(field);
    if (v == nullptr) return std::nullopt;
    return AsString(*v, Join(path_, field));
  }

  std::string Name(std::string_view field, bool simple) {
    std::string v = RequiredString(field);
    if (simple ? !IsSimpleName(v) : !IsIdentifier(v)) {
      SchemaFail(Join(path_, field), "invalid identifier '" + v + "'");
    }
    return v;
  }

  const json* List(std::string_view field) {
    const json* v = Find(field);
    if (v != nullptr && !v->is_array()) {
      SchemaFail(Join(path_, field), "expected a list");
    }
    return v;
  }

  void Finish() const {
    for (const auto& [key, _] : j_.items()) {
      if (!seen_.contains(key)) SchemaFail(Join(path_, key), "unknown field");
    }
  }

  const std::string& path() const { return path_; }

  static std::string AsString(const json& v, const std::string& path) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number() || v.is_boolean()) return v.dump();
    SchemaFail(path, "expected a scalar string");
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string, std::less<>> seen_;
};

template <typename Enum, size_t N>
Enum ParseEnum(const std::string& value, const std::string& path,
               const std::pair<std::string_view, Enum> (&table)[N]) {
  for (const auto& [name, e] : table) {
    if (value == name) return e;
  }
  SchemaFail(path, "unexpected value '" + value + "'");
}

constexpr std::pair<std::string_view, StateForm> kForms[] = {
    {"structured", StateForm::kStructured},
    {"unstructured", StateForm::kUnstructured}};
constexpr std::pair<std::string_view, Access> kAccess[] = {
    {"public", Access::kPublic}, {"internal", Access::kInternal}};
constexpr std::pair<std::string_view, FunctionKind> kKinds[] = {
    {"task", FunctionKind::kTask}, {"macro", FunctionKind::kMacro}};
constexpr std::pair<std::string_view, ExecutorMode> kModes[] = {
    {"builtin", ExecutorMode::kBuiltin},
    {"remote-http", ExecutorMode::kRemoteHttp}};

StateKeySpec StateKeyFromJson(const json& j, const std::string& path) {
  FieldReader r(j, path);
  StateKeySpec s;
  s.key = r.Name("key", false);
  s.form = ParseEnum(r.RequiredString("form"), Join(path, "form"), kForms);
  s.provider = r.OptionalString("provider");
  r.Finish();
  if (s.form == StateForm::kStructured && s.provider) {
    SchemaFail(Join(path, "provider"), "structured state takes no provider");
  }
  if (s.form == StateForm::kUnstructured) {
    if (!s.provider) {
      SchemaFail(Join(path, "provider"), "unstructured state needs a provider");
    }
    if (!IsSimpleName(*s.provider)) {
      SchemaFail(Join(path, "provider"), "invalid bucket name");
    }
  }
  return s;
}

FunctionBinding BindingFromJson(const json& j, const std::string& path) {
  FieldReader r(j, path);
  FunctionBinding b;
  b.name = r.Name("name", true);
  if (auto a = r.OptionalString("access")) {
    b.access = ParseEnum(*a, Join(path, "access"), kAccess);
  }
  b.function_ref = r.Name("function", false);
  b.output_class = r.Name("outputClass", false);
  r.Finish();
  return b;
}

MacroStep StepFromJson(const json& j, const std::string& path) {
  FieldReader r(j, path);
  MacroStep s;
  s.as = r.Name("as", true);
  s.target = r.RequiredString("target");
  if (const json* inputs = r.List("inputs")) {
    for (size_t i = 0; i < inputs->size(); ++i) {
      s.inputs.push_back(FieldReader::AsString(
          (*inputs)[i], Index(Join(path, "inputs"), i)));
    }
  }
  s.function = r.Name("function", true);
  if (const json* args = r.Find("args")) {
    if (!args->is_object()) SchemaFail(Join(path, "args"), "expected a mapping");
    for (const auto& [k, v] : args->items()) {
      if (!IsIdentifier(k)) {
        SchemaFail(Join(Join(path, "args"), k), "invalid argument name");
      }
      s.args[k] = FieldReader::AsString(v, Join(Join(path, "args"), k));
    }
  }
  r.Finish();
  return s;
}

MacroSpec MacroFromJson(const json& j, const std::string& path) {
  FieldReader r(j, path);
  MacroSpec m;
  const json* steps = r.List("steps");
  if (steps == nullptr) SchemaFail(Join(path, "steps"), "missing required field");
  for (size_t i = 0; i < steps->size(); ++i) {
    m.steps.push_back(StepFromJson((*steps)[i], Index(Join(path, "steps"), i)));
  }
  m.output = r.Name("output", true);
  r.Finish();
  return m;
}

ExecutorBinding ExecutorFromJson(const json& j, const std::string& path) {
  FieldReader r(j, path);
  ExecutorBinding e;
  e.mode = ParseEnum(r.RequiredString("mode"), Join(path, "mode"), kModes);
  e.target = r.RequiredString("target");
  r.Finish();
  if (e.target.empty()) SchemaFail(Join(path, "target"), "empty target");
  return e;
}

}  // namespace

std::string_view ToString(StateForm v) {
  return v == StateForm::kStructured ? "structured" : "unstructured";
}
std::string_view ToString(Access v) {
  return v == Access::kPublic ? "public" : "internal";
}
std::string_view ToString(FunctionKind v) {
  return v == FunctionKind::kTask ? "task" : "macro";
}
std::string_view ToString(ExecutorMode v) {
  return v == ExecutorMode::kBuiltin ? "builtin" : "remote-http";
}

std::string Qualify(std::string_view package, std::string_view name) {
  if (name.find('.') != std::string_view::npos) return std::string(name);
  return std::string(package) + "." + std::string(name);
}

std::string PackageOf(std::string_view qualified) {
  const auto dot = qualified.find('.');
  if (dot == std::string_view::npos) return "";
  return std::string(qualified.substr(0, dot));
}

PackageSpec QualifyReferences(PackageSpec pkg) {
  for (auto& cls : pkg.classes) {
    if (cls.parent) cls.parent = Qualify(pkg.name, *cls.parent);
    for (auto& b : cls.bindings) {
      b.function_ref = Qualify(pkg.name, b.function_ref);
      b.output_class = Qualify(pkg.name, b.output_class);
    }
  }
  return pkg;
}

json ToJson(const StateKeySpec& v) {
  json j = {{"key", v.key}, {"form", ToString(v.form)}};
  if (v.provider) j["provider"] = *v.provider;
  return j;
}

json ToJson(const FunctionBinding& v) {
  return {{"name", v.name},
          {"access", ToString(v.access)},
          {"function", v.function_ref},
          {"outputClass", v.output_class}};
}

json ToJson(const ClassSpec& v) {
  json j = {{"name", v.name},
            {"stateKeys", json::array()},
            {"functions", json::array()}};
  if (v.parent) j["parent"] = *v.parent;
  for (const auto& s : v.state_keys) j["stateKeys"].push_back(ToJson(s));
  for (const auto& b : v.bindings) j["functions"].push_back(ToJson(b));
  return j;
}

json ToJson(const MacroStep& v) {
  json j = {{"as", v.as},
            {"target", v.target},
            {"function", v.function},
            {"args", json::object()}};
  if (!v.inputs.empty()) j["inputs"] = v.inputs;
  for (const auto& [k, a] : v.args) j["args"][k] = a;
  return j;
}

json ToJson(const MacroSpec& v) {
  json j = {{"steps", json::array()}, {"output", v.output}};
  for (const auto& s : v.steps) j["steps"].push_back(ToJson(s));
  return j;
}

json ToJson(const FunctionSpec& v) {
  json j = {{"name", v.name}, {"type", ToString(v.kind)}};
  if (v.executor) {
    j["executor"] = {{"mode", ToString(v.executor->mode)},
                     {"target", v.executor->target}};
  }
  if (v.macro) j["macro"] = ToJson(*v.macro);
  return j;
}

json ToJson(const PackageSpec& v) {
  json j = {{"name", v.name},
            {"classes", json::array()},
            {"functions", json::array()}};
  for (const auto& c : v.classes) j["classes"].push_back(ToJson(c));
  for (const auto& f : v.functions) j["functions"].push_back(ToJson(f));
  return j;
}

ClassSpec ClassFromJson(const json& j, const std::string& path) {
  FieldReader r(j, path);
  ClassSpec c;
  c.name = r.Name("name", true);
  if (auto p = r.OptionalString("parent")) {
    if (!IsIdentifier(*p)) SchemaFail(Join(path, "parent"), "invalid class name");
    c.parent = std::move(p);
  }
  if (const json* keys = r.List("stateKeys")) {
    std::set<std::string> names;
    for (size_t i = 0; i < keys->size(); ++i) {
      const std::string at = Index(Join(path, "stateKeys"), i);
      auto s = StateKeyFromJson((*keys)[i], at);
      if (!names.insert(s.key).second) {
        SchemaFail(Join(at, "key"), "duplicate state key '" + s.key + "'");
      }
      c.state_keys.push_back(std::move(s));
    }
  }
  if (const json* fns = r.List("functions")) {
    std::set<std::string> names;
    for (size_t i = 0; i < fns->size(); ++i) {
      const std::string at = Index(Join(path, "functions"), i);
      auto b = BindingFromJson((*fns)[i], at);
      if (!names.insert(b.name).second) {
        SchemaFail(Join(at, "name"), "duplicate function binding '" + b.name + "'");
      }
      c.bindings.push_back(std::move(b));
    }
  }
  r.Finish();
  return c;
}

FunctionSpec FunctionFromJson(const json& j, const std::string& path) {
  FieldReader r(j, path);
  FunctionSpec f;
  f.name = r.Name("name", true);
  f.kind = ParseEnum(r.RequiredString("type"), Join(path, "type"), kKinds);
  if (const json* e = r.Find("executor")) {
    f.executor = ExecutorFromJson(*e, Join(path, "executor"));
  }
  if (const json* m = r.Find("macro")) {
    f.macro = MacroFromJson(*m, Join(path, "macro"));
  }
  r.Finish();
  if (f.kind == FunctionKind::kTask) {
    if (!f.executor) SchemaFail(Join(path, "executor"), "task function needs an executor");
    if (f.macro) SchemaFail(Join(path, "macro"), "task function cannot have a macro");
  } else {
    if (!f.macro) SchemaFail(Join(path, "macro"), "macro function needs a macro body");
    if (f.executor) SchemaFail(Join(path, "executor"), "macro function cannot have an executor");
  }
  return f;
}

PackageSpec PackageFromJson(const json& j) {
  FieldReader r(j, "");
  PackageSpec p;
  p.name = r.Name("name", true);
  std::set<std::string> names;
  if (const json* classes = r.List("classes")) {
    for (size_t i = 0; i < classes->size(); ++i) {
      const std::string at = Index("classes", i);
      auto c = ClassFromJson((*classes)[i], at);
      if (!names.insert("class:" + c.name).second) {
        SchemaFail(Join(at, "name"), "duplicate class name '" + c.name + "'");
      }
      p.classes.push_back(std::move(c));
    }
  }
  if (const json* functions = r.List("functions")) {
    for (size_t i = 0; i < functions->size(); ++i) {
      const std::string at = Index("functions", i);
      auto f = FunctionFromJson((*functions)[i], at);
      if (!names.insert("function:" + f.name).second) {
        SchemaFail(Join(at, "name"), "duplicate function name '" + f.name + "'");
      }
      p.functions.push_back(std::move(f));
    }
  }
  r.Finish();
  return p;
}

}  // namespace oaas::model
