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

#ifndef OAAS_KV_OBJECT_RECORD_H_
#define OAAS_KV_OBJECT_RECORD_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "oaas/common/blob_path.h"
#include "oaas/kv/metadata_store.h"

namespace oaas::kv {

enum class ObjectStatus { kPending, kRunning, kCompleted, kFailed };

std::string_view ToString(ObjectStatus s);
ObjectStatus ObjectStatusFromString(std::string_view s);
inline bool IsTerminal(ObjectStatus s) {
  return s == ObjectStatus::kCompleted || s == ObjectStatus::kFailed;
}

/// How a function-output object came to be.
struct ObjectOrigin {
  std::vector<std::string> source_object_ids;  // main object first
  std::string function;                        // binding name
  std::map<std::string, std::string> args;
  std::optional<std::string> graph_id;
  std::optional<std::string> node;

  bool operator==(const ObjectOrigin&) const = default;
};

/// Object metadata with the structured state piggybacked on the same record.
/// Stored under RecordKind::kObject keyed by id.
struct ObjectRecord {
  std::string id;
  std::string class_name;  // qualified
  uint64_t class_version = 0;
  ObjectStatus status = ObjectStatus::kPending;
  nlohmann::json structured_state = nlohmann::json::object();
  std::map<std::string, BlobPath> unstructured_keys;
  std::optional<ObjectOrigin> origin;
  std::optional<std::string> failure_cause;
  int64_t created_at = 0;
  int64_t updated_at = 0;

  nlohmann::json ToJson() const;
  static ObjectRecord FromJson(const nlohmann::json& j);

  bool operator==(const ObjectRecord&) const = default;
};

struct VersionedObject {
  ObjectRecord record;
  uint64_t version = 0;
};

std::optional<VersionedObject> LoadObject(const MetadataStore& store,
                                          std::string_view id);

}  // namespace oaas::kv

#endif  // OAAS_KV_OBJECT_RECORD_H_
