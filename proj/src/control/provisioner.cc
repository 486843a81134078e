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

#include "oaas/control/provisioner.h"

#include "oaas/common/error.h"
#include "oaas/model/package.h"

namespace oaas::control {

std::string_view ToString(DeploymentState s) {
  switch (s) {
    case DeploymentState::kPending:
      return "pending";
    case DeploymentState::kDeploying:
      return "deploying";
    case DeploymentState::kReady:
      return "ready";
    case DeploymentState::kFailed:
      return "failed";
  }
  return "pending";
}

nlohmann::json DeploymentStatus::ToJson() const {
  return {{"functionName", function_name},
          {"state", ToString(state)},
          {"detail", detail},
          {"updatedAt", updated_at}};
}

void DeploymentTable::MarkPending(const std::string& function) {
  std::lock_guard lock(mu_);
  statuses_.try_emplace(function, DeploymentStatus{function, DeploymentState::kPending,
                                                   "", clock_->NowMillis()});
}

void DeploymentTable::Transition(const std::string& function,
                                 DeploymentState next, std::string detail) {
  std::lock_guard lock(mu_);
  auto it = statuses_.find(function);
  const bool allowed =
      next == DeploymentState::kDeploying
          ? true
          : (it != statuses_.end() && it->second.state == DeploymentState::kDeploying &&
             next != DeploymentState::kPending);
  if (!allowed) {
    throw Error(ErrorCode::kInternal,
                "illegal deployment transition for '" + function + "' to " +
                    std::string(ToString(next)));
  }
  statuses_[function] = DeploymentStatus{function, next, std::move(detail),
                                         clock_->NowMillis()};
}

std::optional<DeploymentStatus> DeploymentTable::Find(const std::string& function) const {
  std::lock_guard lock(mu_);
  auto it = statuses_.find(function);
  if (it == statuses_.end()) return std::nullopt;
  return it->second;
}

Provisioner::Provisioner(std::shared_ptr<ProvisionQueue> queue,
                         std::shared_ptr<kv::MetadataStore> store,
                         std::shared_ptr<DeploymentTable> deployments,
                         std::shared_ptr<exec::RoutingTable> routes,
                         BuiltinCheck builtin_exists, HealthProbe probe)
    : queue_(std::move(queue)),
      store_(std::move(store)),
      deployments_(std::move(deployments)),
      routes_(std::move(routes)),
      builtin_exists_(std::move(builtin_exists)),
      probe_(std::move(probe)) {}

Provisioner::~Provisioner() { Stop(); }

DeploymentStatus Provisioner::Provision(const ProvisionRequest& req) {
  const std::string& name = req.function_name;
  deployments_->Transition(name, DeploymentState::kDeploying);
  auto fail = [&](const std::string& detail) {
    routes_->Remove(name);
    deployments_->Transition(name, DeploymentState::kFailed, detail);
    return *deployments_->Find(name);
  };

  const auto rec = store_->Get(kv::RecordKind::kFunction, name);
  if (!rec) return fail("unknown function");
  const auto spec = model::FunctionFromJson(rec->value);
  if (spec.kind != model::FunctionKind::kTask || !spec.executor) {
    return fail("function has no executor binding");
  }
  const auto& binding = *spec.executor;
  if (binding.mode == model::ExecutorMode::kBuiltin) {
    if (!builtin_exists_(binding.target)) return fail("unknown builtin");
  } else {
    std::string detail;
    if (!probe_(binding.target, &detail)) return fail(detail);
  }
  routes_->Set(name, exec::Route{binding, rec->version});
  deployments_->Transition(name, DeploymentState::kReady);
  return *deployments_->Find(name);
}

bool Provisioner::RunOnce() {
  auto delivery = queue_->Dequeue();
  if (!delivery) return false;
  Provision(delivery->request);
  queue_->Ack(delivery->receipt);
  return true;
}

void Provisioner::Drain() {
  while (RunOnce()) {
  }
}

void Provisioner::Start(int64_t poll_millis) {
  if (running_.exchange(true)) return;
  loop_ = std::thread([this, poll_millis] {
    while (running_) {
      bool worked = false;
      try {
        worked = RunOnce();
      } catch (const std::exception&) {
        // Left unacknowledged; redelivered after the visibility timeout.
      }
      if (!worked) std::this_thread::sleep_for(std::chrono::milliseconds(poll_millis));
    }
  });
}

void Provisioner::Stop() {
  if (!running_.exchange(false)) return;
  loop_.join();
}

}  // namespace oaas::control
