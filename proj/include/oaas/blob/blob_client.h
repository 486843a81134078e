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

#ifndef OAAS_BLOB_BLOB_CLIENT_H_
#define OAAS_BLOB_BLOB_CLIENT_H_

#include <memory>
#include <string>
#include <string_view>

#include "oaas/blob/blob_store.h"

namespace oaas::blob {

/// Fetches and uploads blobs using nothing but presigned URLs; this is the
/// only storage access a function gets. Errors surface as
/// Error(kAccessDenied), Error(kNotFound) or Error(kUnavailable).
class BlobClient {
 public:
  virtual ~BlobClient() = default;
  virtual std::string Get(std::string_view url) = 0;
  virtual void Put(std::string_view url, std::string_view content) = 0;
};

/// Resolves URLs against an in-process BlobStore, ignoring scheme and host.
/// Signature verification still applies.
class LocalBlobClient final : public BlobClient {
 public:
  explicit LocalBlobClient(std::shared_ptr<BlobStore> store)
      : store_(std::move(store)) {}

  std::string Get(std::string_view url) override;
  void Put(std::string_view url, std::string_view content) override;

 private:
  std::shared_ptr<BlobStore> store_;
};

/// Plain HTTP GET/PUT against the blob server.
class HttpBlobClient final : public BlobClient {
 public:
  explicit HttpBlobClient(int timeout_seconds = 60)
      : timeout_seconds_(timeout_seconds) {}

  std::string Get(std::string_view url) override;
  void Put(std::string_view url, std::string_view content) override;

 private:
  int timeout_seconds_;
};

/// Splits "http://host:port/path?q" into ("http://host:port", "/path?q").
/// Throws Error(kInvalidArgument) for a non-absolute URL.
std::pair<std::string, std::string> SplitUrl(std::string_view url);

}  // namespace oaas::blob

#endif  // OAAS_BLOB_BLOB_CLIENT_H_
