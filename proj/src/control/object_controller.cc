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

#include "oaas/control/object_controller.h"

#include "oaas/common/error.h"
#include "oaas/common/ids.h"
#include "oaas/model/parser.h"
#include "oaas/model/resolve.h"
#include "oaas/model/validate.h"

namespace oaas::control {

using nlohmann::json;

json RegistrationResult::ToJson() const {
  json p = json::array();
  for (const auto& r : provisions) p.push_back(r.ToJson());
  return {{"package", package},
          {"classes", classes},
          {"functions", functions},
          {"provisions", std::move(p)}};
}

json InstantiateResult::ToJson() const {
  return {{"object", record.ToJson()}, {"uploadUrls", upload_urls}};
}

ObjectController::ObjectController(std::shared_ptr<kv::MetadataStore> store,
                                   std::shared_ptr<kv::SpecCache> cache,
                                   std::shared_ptr<blob::StorageAdapter> storage,
                                   std::shared_ptr<ProvisionQueue> queue,
                                   std::shared_ptr<DeploymentTable> deployments,
                                   Options options, std::shared_ptr<Clock> clock)
    : store_(std::move(store)),
      cache_(std::move(cache)),
      registry_(cache_),
      storage_(std::move(storage)),
      queue_(std::move(queue)),
      deployments_(std::move(deployments)),
      options_(options),
      clock_(std::move(clock)) {}

RegistrationResult ObjectController::RegisterPackageText(std::string_view document) {
  return RegisterPackage(model::ParsePackage(document));
}

RegistrationResult ObjectController::RegisterPackage(const model::PackageSpec& pkg) {
  std::lock_guard lock(register_mu_);
  const auto report = model::ValidatePackage(pkg, registry_);
  if (!report.ok()) {
    throw Error(ErrorCode::kValidationFailed,
                "package '" + pkg.name + "' failed validation", report.ToJson());
  }
  const model::PackageSpec q = model::QualifyReferences(pkg);

  std::vector<kv::MetadataStore::Write> writes;
  for (const auto& c : q.classes) {
    const std::string key = model::Qualify(q.name, c.name);
    const auto cur = store_->Get(kv::RecordKind::kClass, key);
    writes.push_back({kv::RecordKind::kClass, key, model::ToJson(c),
                      cur ? cur->version : 0});
  }
  for (const auto& f : q.functions) {
    const std::string key = model::Qualify(q.name, f.name);
    const auto cur = store_->Get(kv::RecordKind::kFunction, key);
    writes.push_back({kv::RecordKind::kFunction, key, model::ToJson(f),
                      cur ? cur->version : 0});
  }
  const auto versions = store_->PutBatch(writes);

  RegistrationResult result;
  result.package = q.name;
  for (size_t i = 0; i < writes.size(); ++i) {
    cache_->Invalidate(writes[i].kind, writes[i].key);
    if (writes[i].kind == kv::RecordKind::kClass) {
      result.classes[writes[i].key] = versions[i];
      continue;
    }
    result.functions[writes[i].key] = versions[i];
    const auto& fn = q.functions[i - q.classes.size()];
    if (fn.kind != model::FunctionKind::kTask) continue;
    ProvisionRequest req{writes[i].key, versions[i],
                         versions[i] == 1 ? ProvisionAction::kDeploy
                                          : ProvisionAction::kUpdate};
    deployments_->MarkPending(req.function_name);
    queue_->Enqueue(req);
    result.provisions.push_back(req);
  }
  return result;
}

std::vector<ProvisionRequest> ObjectController::RedeployAll() {
  std::lock_guard lock(register_mu_);
  std::vector<ProvisionRequest> out;
  for (const auto& key : store_->ListKeys(kv::RecordKind::kFunction)) {
    const auto rec = store_->Get(kv::RecordKind::kFunction, key);
    if (!rec || model::FunctionFromJson(rec->value).kind != model::FunctionKind::kTask) continue;
    ProvisionRequest req{key, rec->version, ProvisionAction::kDeploy};
    deployments_->MarkPending(key);
    queue_->Enqueue(req);
    out.push_back(req);
  }
  return out;
}

InstantiateResult ObjectController::InstantiateObject(
    const std::string& class_name, const json& structured_state,
    const std::vector<std::string>& upload_keys, std::optional<std::string> id) {
  const auto cls = model::ResolveClass(class_name, registry_);
  const json state = structured_state.is_null() ? json::object() : structured_state;
  if (!state.is_object()) {
    throw Error(ErrorCode::kInvalidArgument, "structuredState must be a JSON object");
  }
  for (const auto& [field, _] : state.items()) {
    const auto* key = cls.FindStateKey(field);
    if (!key || key->spec.form != model::StateForm::kStructured) {
      throw Error(ErrorCode::kUnknownStateKey,
                  "class '" + class_name + "' declares no structured state '" + field + "'",
                  {{"key", field}});
    }
  }

  kv::ObjectRecord rec;
  if (id) {
    if (!IsIdentifier(*id)) {
      throw Error(ErrorCode::kInvalidArgument, "invalid object id '" + *id + "'");
    }
    rec.id = *id;
  } else {
    rec.id = NewUuid();
  }
  for (const auto& key : upload_keys) {
    const auto* spec = cls.FindStateKey(key);
    if (!spec || spec->spec.form != model::StateForm::kUnstructured) {
      throw Error(ErrorCode::kUnknownStateKey,
                  "class '" + class_name + "' declares no unstructured state '" + key + "'",
                  {{"key", key}});
    }
    rec.unstructured_keys.insert_or_assign(key, BlobPath(*spec->spec.provider, rec.id, key));
  }
  rec.class_name = class_name;
  rec.class_version = registry_.ClassVersion(class_name);
  rec.status = upload_keys.empty() ? kv::ObjectStatus::kCompleted : kv::ObjectStatus::kPending;
  rec.structured_state = state;
  rec.created_at = rec.updated_at = clock_->NowMillis();

  try {
    store_->Put(kv::RecordKind::kObject, rec.id, rec.ToJson(), 0);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kVersionConflict) throw;
    throw Error(ErrorCode::kVersionConflict, "object '" + rec.id + "' already exists");
  }
  InstantiateResult result{rec, {}};
  std::vector<std::string> keys;
  for (const auto& [k, _] : rec.unstructured_keys) keys.push_back(k);
  result.upload_urls = storage_->AllocateUpload(rec.id, keys, options_.upload_ttl_seconds);
  return result;
}

kv::ObjectRecord ObjectController::ConfirmUpload(const std::string& object_id) {
  for (;;) {
    auto obj = kv::LoadObject(*store_, object_id);
    if (!obj) throw Error(ErrorCode::kUnknownObject, "unknown object '" + object_id + "'");
    auto& rec = obj->record;
    if (rec.status == kv::ObjectStatus::kCompleted) return rec;
    if (rec.origin || rec.status != kv::ObjectStatus::kPending) {
      throw Error(ErrorCode::kInvalidArgument,
                  "object '" + object_id + "' is not awaiting uploads");
    }
    json missing = json::array();
    for (const auto& [key, path] : rec.unstructured_keys) {
      if (!storage_->Exists(path)) missing.push_back(key);
    }
    if (!missing.empty()) {
      throw Error(ErrorCode::kMissingBlob,
                  "object '" + object_id + "' is missing uploads", {{"missing", missing}});
    }
    rec.status = kv::ObjectStatus::kCompleted;
    rec.updated_at = clock_->NowMillis();
    try {
      store_->Put(kv::RecordKind::kObject, object_id, rec.ToJson(), obj->version);
      return rec;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kVersionConflict) throw;
    }
  }
}

std::optional<DeploymentStatus> ObjectController::Deployment(
    const std::string& function) const {
  return deployments_->Find(function);
}

}  // namespace oaas::control
