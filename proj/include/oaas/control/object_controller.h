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

#ifndef OAAS_CONTROL_OBJECT_CONTROLLER_H_
#define OAAS_CONTROL_OBJECT_CONTROLLER_H_

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "oaas/blob/storage_adapter.h"
#include "oaas/common/clock.h"
#include "oaas/control/provision_queue.h"
#include "oaas/control/provisioner.h"
#include "oaas/control/store_registry.h"
#include "oaas/kv/object_record.h"
#include "oaas/kv/spec_cache.h"
#include "oaas/model/package.h"

namespace oaas::control {

struct RegistrationResult {
  std::string package;
  std::map<std::string, uint64_t> classes;    // qualified name -> version
  std::map<std::string, uint64_t> functions;  // qualified name -> version
  std::vector<ProvisionRequest> provisions;

  nlohmann::json ToJson() const;
};

struct InstantiateResult {
  kv::ObjectRecord record;
  std::map<std::string, std::string> upload_urls;

  nlohmann::json ToJson() const;
};

class ObjectController {
 public:
  struct Options {
    int64_t upload_ttl_seconds = 3600;
  };

  ObjectController(std::shared_ptr<kv::MetadataStore> store,
                   std::shared_ptr<kv::SpecCache> cache,
                   std::shared_ptr<blob::StorageAdapter> storage,
                   std::shared_ptr<ProvisionQueue> queue,
                   std::shared_ptr<DeploymentTable> deployments, Options options,
                   std::shared_ptr<Clock> clock = DefaultClock());

  /// Validates, then persists every class and function in one atomic
  /// batch and enqueues one provision request per task function. Throws
  /// Error(kValidationFailed) with the report as details.
  RegistrationResult RegisterPackage(const model::PackageSpec& pkg);
  RegistrationResult RegisterPackageText(std::string_view document);

  /// `id` is generated when absent; a caller-chosen id that already exists
  /// is rejected with Error(kVersionConflict).
  InstantiateResult InstantiateObject(const std::string& class_name,
                                      const nlohmann::json& structured_state,
                                      const std::vector<std::string>& upload_keys,
                                      std::optional<std::string> id = std::nullopt);

  /// Moves a developer-created object to COMPLETED once all of its blobs
  /// exist. Throws Error(kMissingBlob) listing the absent keys.
  kv::ObjectRecord ConfirmUpload(const std::string& object_id);

  std::optional<DeploymentStatus> Deployment(const std::string& function) const;

  /// Enqueues a deploy for every stored task function. Routes live in
  /// memory, so a restarted platform calls this once at startup.
  std::vector<ProvisionRequest> RedeployAll();

  const StoreRegistry& registry() const { return registry_; }

 private:
  std::shared_ptr<kv::MetadataStore> store_;
  std::shared_ptr<kv::SpecCache> cache_;
  StoreRegistry registry_;
  std::shared_ptr<blob::StorageAdapter> storage_;
  std::shared_ptr<ProvisionQueue> queue_;
  std::shared_ptr<DeploymentTable> deployments_;
  Options options_;
  std::shared_ptr<Clock> clock_;
  std::mutex register_mu_;
};

}  // namespace oaas::control

#endif  // OAAS_CONTROL_OBJECT_CONTROLLER_H_
