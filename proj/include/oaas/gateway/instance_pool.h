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

#ifndef OAAS_GATEWAY_INSTANCE_POOL_H_
#define OAAS_GATEWAY_INSTANCE_POOL_H_

#include <atomic>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "oaas/common/clock.h"

namespace oaas::gateway {

/// Round-robin over task-manager instances. An instance that failed a
/// dispatch is skipped until `retry_after_millis` passes, then gets one
/// trial request; success puts it back into rotation.
class InstancePool {
 public:
  struct Pick {
    size_t index;
    std::string url;
  };

  InstancePool(std::vector<std::string> urls, int64_t retry_after_millis = 1000,
               std::shared_ptr<Clock> clock = DefaultClock());

  /// nullopt when every instance is cooling down.
  std::optional<Pick> Next();
  void MarkFailed(size_t index);
  void MarkHealthy(size_t index);

  size_t size() const { return instances_.size(); }
  bool healthy(size_t index) const;
  std::vector<std::string> urls() const;

 private:
  struct Instance {
    std::string url;
    bool healthy = true;
    int64_t retry_at = 0;
  };
  int64_t retry_after_millis_;
  std::shared_ptr<Clock> clock_;
  std::atomic<uint64_t> counter_{0};
  mutable std::mutex mu_;
  std::vector<Instance> instances_;
};

}  // namespace oaas::gateway

#endif  // OAAS_GATEWAY_INSTANCE_POOL_H_
