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

#include "oaas/gateway/instance_pool.h"

namespace oaas::gateway {

InstancePool::InstancePool(std::vector<std::string> urls, int64_t retry_after_millis,
                           std::shared_ptr<Clock> clock)
    : retry_after_millis_(retry_after_millis), clock_(std::move(clock)) {
  for (auto& u : urls) instances_.push_back({std::move(u)});
}

std::optional<InstancePool::Pick> InstancePool::Next() {
  if (instances_.empty()) return std::nullopt;
  const uint64_t start = counter_.fetch_add(1);
  const int64_t now = clock_->NowMillis();
  std::lock_guard lock(mu_);
  for (size_t i = 0; i < instances_.size(); ++i) {
    const size_t idx = (start + i) % instances_.size();
    auto& inst = instances_[idx];
    if (inst.healthy) return Pick{idx, inst.url};
    if (now >= inst.retry_at) {
      // One trial request; others keep skipping it until it reports back.
      inst.retry_at = now + retry_after_millis_;
      return Pick{idx, inst.url};
    }
  }
  return std::nullopt;
}

void InstancePool::MarkFailed(size_t index) {
  std::lock_guard lock(mu_);
  instances_.at(index).healthy = false;
  instances_.at(index).retry_at = clock_->NowMillis() + retry_after_millis_;
}

void InstancePool::MarkHealthy(size_t index) {
  std::lock_guard lock(mu_);
  instances_.at(index).healthy = true;
}

bool InstancePool::healthy(size_t index) const {
  std::lock_guard lock(mu_);
  return instances_.at(index).healthy;
}

std::vector<std::string> InstancePool::urls() const {
  std::lock_guard lock(mu_);
  std::vector<std::string> out;
  for (const auto& i : instances_) out.push_back(i.url);
  return out;
}

}  // namespace oaas::gateway
