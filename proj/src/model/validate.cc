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

#include "oaas/model/validate.h"

#include <map>
#include <set>

#include "oaas/common/error.h"
#include "oaas/model/macro.h"

namespace oaas::model {
namespace {

std::string At(std::string_view base, size_t i) {
  return std::string(base) + "[" + std::to_string(i) + "]";
}

void CheckInheritance(const std::string& qualified, const std::string& path,
                      const SpecRegistry& registry, ValidationReport& report) {
  std::set<std::string> seen{qualified};
  auto current = registry.FindClass(qualified);
  while (current && current->parent) {
    const std::string parent = *current->parent;
    if (!seen.insert(parent).second) {
      report.errors.push_back({path + ".parent", "inheritance cycle through '" + parent + "'"});
      return;
    }
    current = registry.FindClass(parent);
    if (!current) {
      report.errors.push_back({path + ".parent", "unresolved parent '" + parent + "'"});
      return;
    }
  }
}

void CheckMacro(const MacroSpec& macro, const std::string& path,
                ValidationReport& report) {
  std::map<std::string, size_t> index;
  for (size_t i = 0; i < macro.steps.size(); ++i) {
    if (!index.emplace(macro.steps[i].as, i).second) {
      report.errors.push_back({At(path + ".steps", i) + ".as",
                               "duplicate step name '" + macro.steps[i].as + "'"});
    }
  }

  const auto edges = StepEdges(macro);
  const auto on_cycle = NodesOnCycles(macro.steps.size(), edges);

  for (size_t i = 0; i < macro.steps.size(); ++i) {
    const auto& step = macro.steps[i];
    const std::string step_path = At(path + ".steps", i);
    if (on_cycle[i]) {
      report.errors.push_back({step_path, "dependency cycle at step '" + step.as + "'"});
    }
    auto check_ref = [&](const std::string& ref, const std::string& ref_path) {
      auto r = ParseStepRef(ref);
      if (!r) {
        report.errors.push_back({ref_path, "invalid reference '" + ref + "'"});
        return;
      }
      if (r->kind != StepRef::Kind::kStep) return;
      auto it = index.find(r->step);
      if (it == index.end()) {
        report.errors.push_back({ref_path, "unresolved step reference '" + ref + "'"});
      } else if (it->second >= i && !on_cycle[i]) {
        report.errors.push_back({ref_path, "forward reference to step '" + ref + "'"});
      }
    };
    check_ref(step.target, step_path + ".target");
    for (size_t k = 0; k < step.inputs.size(); ++k) {
      check_ref(step.inputs[k], At(step_path + ".inputs", k));
    }
    for (const auto& [name, value] : step.args) {
      try {
        ParseArgSubstitution(value);
      } catch (const Error& e) {
        report.errors.push_back({step_path + ".args." + name, e.what()});
      }
    }
  }
  if (!index.contains(macro.output)) {
    report.errors.push_back({path + ".output", "unresolved output step '" + macro.output + "'"});
  }
}

}  // namespace

bool ValidationReport::Has(std::string_view prefix) const {
  for (const auto& e : errors) {
    if (e.message.starts_with(prefix)) return true;
  }
  return false;
}

nlohmann::json ValidationReport::ToJson() const {
  auto arr = nlohmann::json::array();
  for (const auto& e : errors) {
    arr.push_back({{"path", e.path}, {"message", e.message}});
  }
  return {{"ok", ok()}, {"errors", arr}};
}

ValidationReport ValidatePackage(const PackageSpec& pkg,
                                 const SpecRegistry& registry) {
  ValidationReport report;
  const OverlayRegistry view(pkg, registry);

  for (size_t i = 0; i < pkg.classes.size(); ++i) {
    const ClassSpec& cls = pkg.classes[i];
    const std::string path = At("classes", i);
    if (cls.parent) {
      const std::string parent = Qualify(pkg.name, *cls.parent);
      if (!view.FindClass(parent)) {
        report.errors.push_back({path + ".parent", "unresolved parent '" + parent + "'"});
      } else {
        CheckInheritance(Qualify(pkg.name, cls.name), path, view, report);
      }
    }
    for (size_t b = 0; b < cls.bindings.size(); ++b) {
      const FunctionBinding& binding = cls.bindings[b];
      const std::string bpath = At(path + ".functions", b);
      const std::string fn = Qualify(pkg.name, binding.function_ref);
      if (!view.FindFunction(fn)) {
        report.errors.push_back({bpath + ".function", "unresolved functionRef '" + fn + "'"});
      }
      const std::string out = Qualify(pkg.name, binding.output_class);
      if (!view.FindClass(out)) {
        report.errors.push_back({bpath + ".outputClass", "unresolved outputClass '" + out + "'"});
      }
    }
  }

  for (size_t i = 0; i < pkg.functions.size(); ++i) {
    const FunctionSpec& fn = pkg.functions[i];
    if (fn.kind == FunctionKind::kMacro && fn.macro) {
      CheckMacro(*fn.macro, At("functions", i) + ".macro", report);
    }
  }
  return report;
}

}  // namespace oaas::model
