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

#include "oaas/model/parser.h"

#include <yaml-cpp/yaml.h>

#include "oaas/common/error.h"

namespace oaas::model {
namespace {

nlohmann::json FromYaml(const YAML::Node& node) {
  switch (node.Type()) {
    case YAML::NodeType::Null:
    case YAML::NodeType::Undefined:
      return nullptr;
    case YAML::NodeType::Scalar:
      return node.Scalar();
    case YAML::NodeType::Sequence: {
      auto arr = nlohmann::json::array();
      for (const auto& item : node) arr.push_back(FromYaml(item));
      return arr;
    }
    case YAML::NodeType::Map: {
      auto obj = nlohmann::json::object();
      for (const auto& kv : node) {
        const std::string key = kv.first.as<std::string>();
        if (obj.contains(key)) {
          throw Error(ErrorCode::kSchema, key + ": duplicate mapping key",
                      {{"path", key}});
        }
        obj[key] = FromYaml(kv.second);
      }
      return obj;
    }
  }
  return nullptr;
}

}  // namespace

nlohmann::json LoadDocument(std::string_view text) {
  size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i < text.size() && (text[i] == '{' || text[i] == '[')) {
    try {
      return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::kSyntax, std::string("malformed JSON: ") + e.what(),
                  {{"offset", e.byte}});
    }
  }
  try {
    return FromYaml(YAML::Load(std::string(text)));
  } catch (const YAML::ParserException& e) {
    throw Error(ErrorCode::kSyntax, std::string("malformed YAML: ") + e.what(),
                {{"line", e.mark.line + 1}, {"column", e.mark.column + 1}});
  }
}

PackageSpec ParsePackage(std::string_view text) {
  return PackageFromJson(LoadDocument(text));
}

std::string SerializePackage(const PackageSpec& pkg) {
  return ToJson(pkg).dump();
}

}  // namespace oaas::model
