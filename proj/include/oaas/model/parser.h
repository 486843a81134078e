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

#ifndef OAAS_MODEL_PARSER_H_
#define OAAS_MODEL_PARSER_H_

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "oaas/model/package.h"

namespace oaas::model {

/// Converts a YAML or JSON document into a JSON tree. YAML scalars become
/// JSON strings. Throws Error(kSyntax) with line/column on malformed input.
nlohmann::json LoadDocument(std::string_view text);

/// Parses a package declaration in strict mode: unknown fields, missing
/// fields and duplicate names are rejected with Error(kSchema) carrying the
/// path (e.g. "classes[1].name").
PackageSpec ParsePackage(std::string_view text);

/// Canonical form: compact JSON with lexicographically sorted keys.
std::string SerializePackage(const PackageSpec& pkg);

}  // namespace oaas::model

#endif  // OAAS_MODEL_PARSER_H_
