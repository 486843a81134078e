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

#ifndef OAAS_CONTROL_PROVISION_QUEUE_H_
#define OAAS_CONTROL_PROVISION_QUEUE_H_

#include <deque>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "oaas/common/clock.h"

namespace oaas::control {

enum class ProvisionAction { kDeploy, kUpdate };

std::string_view ToString(ProvisionAction a);

struct ProvisionRequest {
  std::string function_name;  // qualified
  uint64_t spec_version = 0;
  ProvisionAction action = ProvisionAction::kDeploy;

  nlohmann::json ToJson() const;
  static ProvisionRequest FromJson(const nlohmann::json& j);
  bool operator==(const ProvisionRequest&) const = default;
};

struct QueueDelivery {
  uint64_t receipt = 0;
  ProvisionRequest request;
};

/// FIFO with at-least-once delivery. A dequeued request stays invisible
/// for the visibility timeout; without an Ack it is delivered again. With a
/// journal path every enqueue and ack is appended to that file and replayed
/// on construction, so unacknowledged requests survive a restart.
class ProvisionQueue {
 public:
  explicit ProvisionQueue(std::optional<std::filesystem::path> journal = std::nullopt,
                          int64_t visibility_millis = 10'000,
                          std::shared_ptr<Clock> clock = DefaultClock());

  void Enqueue(const ProvisionRequest& req);
  std::optional<QueueDelivery> Dequeue();
  /// Unknown receipts are ignored.
  void Ack(uint64_t receipt);

  /// Requests not yet acknowledged, visible or in flight.
  size_t Pending() const;

 private:
  struct Entry {
    ProvisionRequest request;
    int64_t invisible_until = 0;
  };
  void Append(const nlohmann::json& line);

  std::optional<std::filesystem::path> journal_;
  std::ofstream out_;
  int64_t visibility_millis_;
  std::shared_ptr<Clock> clock_;
  mutable std::mutex mu_;
  std::map<uint64_t, Entry> entries_;  // receipt order is FIFO order
  uint64_t next_receipt_ = 1;
};

}  // namespace oaas::control

#endif  // OAAS_CONTROL_PROVISION_QUEUE_H_
