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

#ifndef OAAS_BLOB_BLOB_STORE_H_
#define OAAS_BLOB_BLOB_STORE_H_

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include "oaas/blob/presigned_url.h"
#include "oaas/common/blob_path.h"
#include "oaas/common/clock.h"

namespace oaas::blob {

/// Filesystem-backed state storage laid out as <root>/<bucket>/<objectId>/<key>.
/// Untrusted access (Put/Get) requires a presigned URL that verifies for
/// the path and method at the current time. Writes go to a temp file and are
/// renamed into place, so readers see either the old or the new blob.
class BlobStore {
 public:
  using AccessObserver = std::function<void(const BlobPath&, HttpMethod)>;
  /// Returns false when the blob at the path must no longer change.
  using WriteGuard = std::function<bool(const BlobPath&)>;

  BlobStore(std::filesystem::path root, std::shared_ptr<const UrlSigner> signer,
            std::shared_ptr<Clock> clock = DefaultClock());

  /// Throws Error(kAccessDenied) when `auth` does not verify or the write
  /// guard refuses the path.
  size_t Put(const BlobPath& path, std::string_view content,
             const PresignedUrl& auth);
  /// Throws Error(kAccessDenied) or Error(kNotFound).
  std::string Get(const BlobPath& path, const PresignedUrl& auth) const;

  /// Verification only, for callers that stream the file themselves.
  void Authorize(const BlobPath& path, HttpMethod method,
                 const PresignedUrl& auth) const;

  // Platform-internal operations; no capability check.
  bool Exists(const BlobPath& path) const;
  std::optional<uint64_t> SizeOf(const BlobPath& path) const;
  std::filesystem::path FileFor(const BlobPath& path) const;
  std::string ReadTrusted(const BlobPath& path) const;
  void WriteTrusted(const BlobPath& path, std::string_view content);

  /// Called for every authorized Get/Put.
  void SetAccessObserver(AccessObserver observer);
  void SetWriteGuard(WriteGuard guard);
  uint64_t gets() const { return gets_.load(); }
  uint64_t puts() const { return puts_.load(); }

  const UrlSigner& signer() const { return *signer_; }
  const Clock& clock() const { return *clock_; }

 private:
  void Observe(const BlobPath& path, HttpMethod method) const;

  std::filesystem::path root_;
  std::shared_ptr<const UrlSigner> signer_;
  std::shared_ptr<Clock> clock_;
  mutable std::mutex observer_mu_;
  AccessObserver observer_;
  WriteGuard guard_;
  mutable std::atomic<uint64_t> gets_{0};
  mutable std::atomic<uint64_t> puts_{0};
};

}  // namespace oaas::blob

#endif  // OAAS_BLOB_BLOB_STORE_H_
