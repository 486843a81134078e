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

#ifndef OAAS_BLOB_STORAGE_ADAPTER_H_
#define OAAS_BLOB_STORAGE_ADAPTER_H_

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "oaas/blob/blob_client.h"
#include "oaas/blob/blob_store.h"
#include "oaas/blob/presigned_url.h"
#include "oaas/kv/metadata_store.h"

namespace oaas::blob {

enum class DeliveryMode { kRedirect, kRelay };

std::string_view ToString(DeliveryMode m);
DeliveryMode DeliveryModeFromString(std::string_view s);

struct StateRedirect {
  PresignedUrl url;
  std::string location;  // absolute URL for the Location header
};

struct StateContent {
  std::string bytes;
};

using StateResolution = std::variant<StateRedirect, StateContent>;

/// The one gateway to object state: hands out presigned URLs scoped to a
/// single blob, and delivers content either by redirect (the caller fetches
/// from state storage itself) or by relaying the bytes.
class StorageAdapter {
 public:
  /// `public_base` prefixes every issued URL (the blob server's address).
  /// `relay_client` is what relay mode uses to pull bytes from storage.
  StorageAdapter(std::shared_ptr<kv::MetadataStore> metadata,
                 std::shared_ptr<BlobStore> store, std::string public_base,
                 std::shared_ptr<BlobClient> relay_client);

  PresignedUrl Presign(const BlobPath& path, HttpMethod method,
                       int64_t ttl_seconds) const;
  std::string PresignUrl(const BlobPath& path, HttpMethod method,
                         int64_t ttl_seconds) const;

  /// Throws Error(kUnknownObject) or Error(kUnknownStateKey) when the
  /// object does not declare `key` as unstructured state.
  StateResolution ResolveState(const std::string& object_id,
                               const std::string& key, DeliveryMode mode,
                               int64_t ttl_seconds) const;

  /// One presigned PUT URL per key, under the object's declared bucket.
  std::map<std::string, std::string> AllocateUpload(
      const std::string& object_id, const std::vector<std::string>& keys,
      int64_t ttl_seconds) const;

  bool Exists(const BlobPath& path) const { return store_->Exists(path); }
  BlobStore& store() const { return *store_; }
  const std::string& public_base() const { return public_base_; }

 private:
  std::shared_ptr<kv::MetadataStore> metadata_;
  std::shared_ptr<BlobStore> store_;
  std::string public_base_;
  std::shared_ptr<BlobClient> relay_client_;
};

}  // namespace oaas::blob

#endif  // OAAS_BLOB_STORAGE_ADAPTER_H_
