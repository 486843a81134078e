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

#ifndef OAAS_CONTROL_PROVISIONER_H_
#define OAAS_CONTROL_PROVISIONER_H_

#include <atomic>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

#include "oaas/common/clock.h"
#include "oaas/control/provision_queue.h"
#include "oaas/exec/routing_table.h"
#include "oaas/kv/metadata_store.h"

namespace oaas::control {

enum class DeploymentState { kPending, kDeploying, kReady, kFailed };

std::string_view ToString(DeploymentState s);

struct DeploymentStatus {
  std::string function_name;
  DeploymentState state = DeploymentState::kPending;
  std::string detail;
  int64_t updated_at = 0;

  nlohmann::json ToJson() const;
};

/// Current deployment state per function. Transitions are restricted to
/// pending -> deploying -> {ready, failed}; a later provisioning pass
/// restarts from deploying.
class DeploymentTable {
 public:
  explicit DeploymentTable(std::shared_ptr<Clock> clock = DefaultClock())
      : clock_(std::move(clock)) {}

  /// Records `pending` unless the function already has a status.
  void MarkPending(const std::string& function);
  /// Throws Error(kInternal) on a transition outside the state machine.
  void Transition(const std::string& function, DeploymentState next,
                  std::string detail = "");
  std::optional<DeploymentStatus> Find(const std::string& function) const;

 private:
  std::shared_ptr<Clock> clock_;
  mutable std::mutex mu_;
  std::map<std::string, DeploymentStatus> statuses_;
};

/// Consumes provision requests and binds task functions to executors.
/// Provisioning is idempotent, so a redelivered request is harmless.
class Provisioner {
 public:
  using BuiltinCheck = std::function<bool(std::string_view)>;
  using HealthProbe = std::function<bool(const std::string& endpoint, std::string* detail)>;

  Provisioner(std::shared_ptr<ProvisionQueue> queue,
              std::shared_ptr<kv::MetadataStore> store,
              std::shared_ptr<DeploymentTable> deployments,
              std::shared_ptr<exec::RoutingTable> routes,
              BuiltinCheck builtin_exists, HealthProbe probe);
  ~Provisioner();

  DeploymentStatus Provision(const ProvisionRequest& req);

  /// Handles at most one request. False when the queue had nothing visible.
  bool RunOnce();

  /// Processes requests until the queue has nothing visible.
  void Drain();

  void Start(int64_t poll_millis = 20);
  void Stop();

 private:
  std::shared_ptr<ProvisionQueue> queue_;
  std::shared_ptr<kv::MetadataStore> store_;
  std::shared_ptr<DeploymentTable> deployments_;
  std::shared_ptr<exec::RoutingTable> routes_;
  BuiltinCheck builtin_exists_;
  HealthProbe probe_;
  std::atomic<bool> running_{false};
  std::thread loop_;
};

}  // namespace oaas::control

#endif  // OAAS_CONTROL_PROVISIONER_H_
