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

#ifndef OAAS_MODEL_VALIDATE_H_
#define OAAS_MODEL_VALIDATE_H_

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "oaas/model/package.h"
#include "oaas/model/registry.h"

namespace oaas::model {

struct ValidationIssue {
  std::string path;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> errors;

  bool ok() const { return errors.empty(); }
  /// True if some entry's message starts with `prefix`.
  bool Has(std::string_view prefix) const;
  nlohmann::json ToJson() const;
};

/// Checks cross-references (parents, functionRefs, outputClasses), the
/// inheritance chain, and every macro body against the package itself and
/// the already-registered specs. Never throws; problems are report entries.
ValidationReport ValidatePackage(const PackageSpec& pkg,
                                 const SpecRegistry& registry);

}  // namespace oaas::model

#endif  // OAAS_MODEL_VALIDATE_H_
