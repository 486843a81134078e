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

#include "oaas/common/blob_path.h"

#include "oaas/common/error.h"
#include "oaas/common/ids.h"

namespace oaas {
namespace {

void CheckComponent(const std::string& v, const char* what, bool simple) {
  const bool ok = simple ? IsSimpleName(v) : IsIdentifier(v);
  if (!ok || v == "." || v == "..") {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("invalid blob ") + what + " '" + v + "'");
  }
}

}  // namespace

BlobPath::BlobPath(std::string bucket, std::string object_id, std::string key)
    : bucket_(std::move(bucket)),
      object_id_(std::move(object_id)),
      key_(std::move(key)) {
  CheckComponent(bucket_, "bucket", true);
  CheckComponent(object_id_, "object id", false);
  CheckComponent(key_, "key", false);
}

std::string BlobPath::ToString() const {
  return bucket_ + "/" + object_id_ + "/" + key_;
}

BlobPath BlobPath::Parse(std::string_view canonical) {
  const auto a = canonical.find('/');
  const auto b = a == std::string_view::npos ? a : canonical.find('/', a + 1);
  if (b == std::string_view::npos ||
      canonical.find('/', b + 1) != std::string_view::npos) {
    throw Error(ErrorCode::kInvalidArgument,
                "malformed blob path '" + std::string(canonical) + "'");
  }
  return BlobPath(std::string(canonical.substr(0, a)),
                  std::string(canonical.substr(a + 1, b - a - 1)),
                  std::string(canonical.substr(b + 1)));
}

nlohmann::json BlobPath::ToJson() const {
  return {{"bucket", bucket_}, {"objectId", object_id_}, {"key", key_}};
}

BlobPath BlobPath::FromJson(const nlohmann::json& j) {
  return BlobPath(j.at("bucket").get<std::string>(),
                  j.at("objectId").get<std::string>(),
                  j.at("key").get<std::string>());
}

}  // namespace oaas
