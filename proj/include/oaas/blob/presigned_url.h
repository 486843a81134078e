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

#ifndef OAAS_BLOB_PRESIGNED_URL_H_
#define OAAS_BLOB_PRESIGNED_URL_H_

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "oaas/common/blob_path.h"

namespace oaas::blob {

enum class HttpMethod { kGet, kPut };

std::string_view ToString(HttpMethod m);
/// Throws Error(kInvalidArgument).
HttpMethod HttpMethodFromString(std::string_view s);

/// A capability for one method on one blob path, valid while
/// now <= expires_at (Unix seconds).
struct PresignedUrl {
  BlobPath path;
  HttpMethod method = HttpMethod::kGet;
  int64_t expires_at = 0;
  std::string signature;  // lowercase hex HMAC-SHA256

  /// "/blob/{bucket}/{objectId}/{key}?expires=..&method=..&sig=.."
  std::string Target() const;
  /// `base` is scheme and authority, e.g. "http://127.0.0.1:9000".
  std::string ToUrl(std::string_view base) const;

  /// Accepts an absolute URL or a bare target. Throws
  /// Error(kAccessDenied) when the signing parameters are missing or
  /// malformed, Error(kInvalidArgument) for a non-blob path.
  static PresignedUrl Parse(std::string_view url);
};

/// Signs and verifies presigned URLs with a single server-wide secret.
///
///   signature = HMAC-SHA256(secret, method "\n" bucket/objectId/key "\n" expires)
class UrlSigner {
 public:
  explicit UrlSigner(std::string secret);

  /// ttl_seconds must be >= 1.
  PresignedUrl Presign(const BlobPath& path, HttpMethod method,
                       int64_t ttl_seconds, int64_t now_seconds) const;

  /// Constant-time signature check plus method, path and expiry match.
  bool Verify(const PresignedUrl& url, HttpMethod method, const BlobPath& path,
              int64_t now_seconds) const;

 private:
  std::string Sign(const BlobPath& path, HttpMethod method,
                   int64_t expires_at) const;

  std::string secret_;
};

/// Reads a secret from a file (trailing whitespace trimmed). Throws
/// Error(kIo) when unreadable or empty.
std::string LoadSecret(const std::string& path);

}  // namespace oaas::blob

#endif  // OAAS_BLOB_PRESIGNED_URL_H_
