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

#ifndef OAAS_PLATFORM_PLATFORM_H_
#define OAAS_PLATFORM_PLATFORM_H_

#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "oaas/blob/blob_client.h"
#include "oaas/blob/blob_store.h"
#include "oaas/blob/storage_adapter.h"
#include "oaas/control/object_controller.h"
#include "oaas/control/provisioner.h"
#include "oaas/exec/executor.h"
#include "oaas/gateway/gateway.h"
#include "oaas/invoke/task_manager.h"
#include "oaas/kv/metadata_store.h"
#include "oaas/platform/config.h"

namespace httplib {
class Server;
}

namespace oaas::platform {

/// Every module in one process. The gateway listener also serves the blob
/// routes; each task-manager instance gets its own loopback listener that
/// the gateway balances across.
class Platform {
 public:
  explicit Platform(Config config);
  ~Platform();

  Platform(const Platform&) = delete;
  Platform& operator=(const Platform&) = delete;

  /// Binds and starts every listener and the provisioner.
  void Start();
  /// Stops listeners and workers, then writes the snapshot if configured.
  void Stop();

  /// "http://host:port" of the gateway.
  const std::string& url() const { return url_; }

  /// Takes a task-manager listener down or brings it back on its port.
  void StopInstance(size_t index);
  void StartInstance(size_t index);

  const Config& config() const { return config_; }
  kv::MetadataStore& store() { return *store_; }
  blob::BlobStore& blobs() { return *blobs_; }
  control::ObjectController& controller() { return *controller_; }
  exec::Executor& executor() { return *executor_; }
  gateway::Gateway& gateway() { return *gateway_; }
  invoke::TaskManager& task_manager(size_t index) { return *instances_.at(index)->tm; }
  size_t instance_count() const { return instances_.size(); }

 private:
  struct Instance {
    std::shared_ptr<invoke::TaskManager> tm;
    std::unique_ptr<httplib::Server> server;
    std::thread thread;
    int port = 0;
  };
  void Listen(Instance& inst);

  Config config_;
  std::shared_ptr<Clock> clock_;
  std::shared_ptr<kv::MetadataStore> store_;
  std::shared_ptr<blob::UrlSigner> signer_;
  std::shared_ptr<blob::BlobStore> blobs_;
  std::shared_ptr<blob::StorageAdapter> storage_;
  std::shared_ptr<control::ProvisionQueue> queue_;
  std::shared_ptr<control::DeploymentTable> deployments_;
  std::shared_ptr<exec::RoutingTable> routes_;
  std::shared_ptr<control::ObjectController> controller_;
  std::unique_ptr<control::Provisioner> provisioner_;
  std::unique_ptr<exec::Executor> executor_;
  std::vector<std::unique_ptr<Instance>> instances_;
  std::unique_ptr<gateway::Gateway> gateway_;

  std::unique_ptr<httplib::Server> server_;
  std::thread server_thread_;
  std::string url_;
  std::atomic<uint64_t> sink_counter_{0};
  bool started_ = false;
  bool stopped_ = false;
};

}  // namespace oaas::platform

#endif  // OAAS_PLATFORM_PLATFORM_H_
