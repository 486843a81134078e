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

#include "oaas/kv/object_record.h"

#include "oaas/common/error.h"

namespace oaas::kv {

using nlohmann::json;

std::string_view ToString(ObjectStatus s) {
  switch (s) {
    case ObjectStatus::kPending:
      return "PENDING";
    case ObjectStatus::kRunning:
      return "RUNNING";
    case ObjectStatus::kCompleted:
      return "COMPLETED";
    case ObjectStatus::kFailed:
      return "FAILED";
  }
  return "PENDING";
}

ObjectStatus ObjectStatusFromString(std::string_view s) {
  for (auto v : {ObjectStatus::kPending, ObjectStatus::kRunning,
                 ObjectStatus::kCompleted, ObjectStatus::kFailed}) {
    if (ToString(v) == s) return v;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown status '" + std::string(s) + "'");
}

json ObjectRecord::ToJson() const {
  json j = {{"id", id},
            {"class", class_name},
            {"classVersion", class_version},
            {"status", ToString(status)},
            {"structuredState", structured_state},
            {"unstructuredKeys", json::object()},
            {"createdAt", created_at},
            {"updatedAt", updated_at}};
  for (const auto& [k, p] : unstructured_keys) j["unstructuredKeys"][k] = p.ToJson();
  if (origin) {
    json o = {{"sourceObjectIds", origin->source_object_ids},
              {"function", origin->function},
              {"args", origin->args}};
    if (origin->graph_id) o["graphId"] = *origin->graph_id;
    if (origin->node) o["node"] = *origin->node;
    j["origin"] = std::move(o);
  }
  if (failure_cause) j["failureCause"] = *failure_cause;
  return j;
}

ObjectRecord ObjectRecord::FromJson(const json& j) {
  ObjectRecord r;
  r.id = j.at("id").get<std::string>();
  r.class_name = j.at("class").get<std::string>();
  r.class_version = j.value("classVersion", uint64_t{0});
  r.status = ObjectStatusFromString(j.at("status").get<std::string>());
  r.structured_state = j.value("structuredState", json::object());
  const json keys = j.value("unstructuredKeys", json::object());
  for (const auto& [k, p] : keys.items()) {
    r.unstructured_keys.emplace(k, BlobPath::FromJson(p));
  }
  if (j.contains("origin")) {
    const auto& o = j["origin"];
    ObjectOrigin origin;
    origin.source_object_ids = o.value("sourceObjectIds", std::vector<std::string>{});
    origin.function = o.value("function", "");
    origin.args = o.value("args", std::map<std::string, std::string>{});
    if (o.contains("graphId")) origin.graph_id = o["graphId"].get<std::string>();
    if (o.contains("node")) origin.node = o["node"].get<std::string>();
    r.origin = std::move(origin);
  }
  if (j.contains("failureCause")) r.failure_cause = j["failureCause"].get<std::string>();
  r.created_at = j.value("createdAt", int64_t{0});
  r.updated_at = j.value("updatedAt", int64_t{0});
  return r;
}

std::optional<VersionedObject> LoadObject(const MetadataStore& store,
                                          std::string_view id) {
  auto rec = store.Get(RecordKind::kObject, id);
  if (!rec) return std::nullopt;
  return VersionedObject{ObjectRecord::FromJson(rec->value), rec->version};
}

}  // namespace oaas::kv
