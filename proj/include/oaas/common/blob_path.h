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

#ifndef OAAS_COMMON_BLOB_PATH_H_
#define OAAS_COMMON_BLOB_PATH_H_

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace oaas {

/// Location of one unstructured state blob. Components are restricted to
/// [A-Za-z0-9_.-] (bucket additionally without '.'), and "." / ".." are
/// rejected, so a path can never escape its bucket directory.
class BlobPath {
 public:
  /// Throws Error(kInvalidArgument) on an invalid component.
  BlobPath(std::string bucket, std::string object_id, std::string key);

  const std::string& bucket() const { return bucket_; }
  const std::string& object_id() const { return object_id_; }
  const std::string& key() const { return key_; }

  /// "bucket/objectId/key"
  std::string ToString() const;
  /// Inverse of ToString(); throws Error(kInvalidArgument).
  static BlobPath Parse(std::string_view canonical);

  nlohmann::json ToJson() const;
  static BlobPath FromJson(const nlohmann::json& j);

  bool operator==(const BlobPath&) const = default;
  auto operator<=>(const BlobPath&) const = default;

 private:
  std::string bucket_;
  std::string object_id_;
  std::string key_;
};

}  // namespace oaas

#endif  // OAAS_COMMON_BLOB_PATH_H_
