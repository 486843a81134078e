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

#include "oaas/blob/storage_adapter.h"

#include "oaas/common/error.h"
#include "oaas/kv/object_record.h"

namespace oaas::blob {

std::string_view ToString(DeliveryMode m) {
  return m == DeliveryMode::kRedirect ? "redirect" : "relay";
}

DeliveryMode DeliveryModeFromString(std::string_view s) {
  if (s == "redirect") return DeliveryMode::kRedirect;
  if (s == "relay") return DeliveryMode::kRelay;
  throw Error(ErrorCode::kInvalidArgument, "unknown delivery mode '" + std::string(s) + "'");
}

StorageAdapter::StorageAdapter(std::shared_ptr<kv::MetadataStore> metadata,
                               std::shared_ptr<BlobStore> store,
                               std::string public_base,
                               std::shared_ptr<BlobClient> relay_client)
    : metadata_(std::move(metadata)),
      store_(std::move(store)),
      public_base_(std::move(public_base)),
      relay_client_(std::move(relay_client)) {
  // Blobs of a finished object are immutable even to holders of a still
  // valid PUT URL, e.g. a retried task whose first attempt completed.
  store_->SetWriteGuard([md = metadata_](const BlobPath& path) {
    const auto obj = kv::LoadObject(*md, path.object_id());
    return !obj || obj->record.status == kv::ObjectStatus::kPending ||
           obj->record.status == kv::ObjectStatus::kRunning;
  });
}

PresignedUrl StorageAdapter::Presign(const BlobPath& path, HttpMethod method,
                                     int64_t ttl_seconds) const {
  return store_->signer().Presign(path, method, ttl_seconds,
                                  store_->clock().NowSeconds());
}

std::string StorageAdapter::PresignUrl(const BlobPath& path, HttpMethod method,
                                       int64_t ttl_seconds) const {
  return Presign(path, method, ttl_seconds).ToUrl(public_base_);
}

StateResolution StorageAdapter::ResolveState(const std::string& object_id,
                                             const std::string& key,
                                             DeliveryMode mode,
                                             int64_t ttl_seconds) const {
  auto obj = kv::LoadObject(*metadata_, object_id);
  if (!obj) throw Error(ErrorCode::kUnknownObject, "unknown object '" + object_id + "'");
  auto it = obj->record.unstructured_keys.find(key);
  if (it == obj->record.unstructured_keys.end()) {
    throw Error(ErrorCode::kUnknownStateKey,
                "object '" + object_id + "' has no unstructured state '" + key + "'");
  }
  const auto url = Presign(it->second, HttpMethod::kGet, ttl_seconds);
  const std::string location = url.ToUrl(public_base_);
  if (mode == DeliveryMode::kRedirect) return StateRedirect{url, location};
  return StateContent{relay_client_->Get(location)};
}

std::map<std::string, std::string> StorageAdapter::AllocateUpload(
    const std::string& object_id, const std::vector<std::string>& keys,
    int64_t ttl_seconds) const {
  std::map<std::string, std::string> out;
  if (keys.empty()) return out;
  auto obj = kv::LoadObject(*metadata_, object_id);
  if (!obj) throw Error(ErrorCode::kUnknownObject, "unknown object '" + object_id + "'");
  for (const auto& key : keys) {
    auto it = obj->record.unstructured_keys.find(key);
    if (it == obj->record.unstructured_keys.end()) {
      throw Error(ErrorCode::kUnknownStateKey,
                  "object '" + object_id + "' has no unstructured state '" + key + "'");
    }
    out[key] = PresignUrl(it->second, HttpMethod::kPut, ttl_seconds);
  }
  return out;
}

}  // namespace oaas::blob
