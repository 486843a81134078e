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

#ifndef OAAS_MODEL_OAI_H_
#define OAAS_MODEL_OAI_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace oaas::model {

/// One object access expression:
///
///   oai     := object_id [":" fn_name "(" arglist? ")"] ["/" content_key]
///   arglist := name "=" value ("," name "=" value)*
///
/// Names are [A-Za-z0-9_.-]+; values are percent-decoded and may contain
/// anything except ',' and ')'.
struct OaiRequest {
  std::string main_object;
  std::optional<std::string> function;
  std::map<std::string, std::string> args;
  std::optional<std::string> content_key;
  // Extra input objects. Not expressible in the expression syntax; set by
  // the REST body or the CLI.
  std::vector<std::string> inputs;

  bool operator==(const OaiRequest&) const = default;
};

/// Throws Error(kOaiSyntax) with details {"offset": byte offset}.
OaiRequest ParseOai(std::string_view expr);

/// Canonical whitespace-free form. ParseOai(PrintOai(r)) == r for requests
/// without `inputs`.
std::string PrintOai(const OaiRequest& req);

}  // namespace oaas::model

#endif  // OAAS_MODEL_OAI_H_
