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

#include "oaas/kv/spec_cache.h"

#include "oaas/common/error.h"

namespace oaas::kv {
namespace {

void RequireSpecKind(RecordKind kind) {
  if (kind != RecordKind::kClass && kind != RecordKind::kFunction) {
    throw Error(ErrorCode::kInvalidArgument,
                "only class and function records are cacheable");
  }
}

}  // namespace

SpecCache::SpecCache(std::shared_ptr<MetadataStore> store, Options options,
                     std::shared_ptr<Clock> clock)
    : store_(std::move(store)), options_(options), clock_(std::move(clock)) {}

std::optional<Record> SpecCache::Find(RecordKind kind, const std::string& key) {
  RequireSpecKind(kind);
  if (options_.enabled) {
    std::lock_guard lock(mu_);
    auto it = entries_.find({kind, key});
    if (it != entries_.end()) {
      const bool expired =
          options_.ttl_millis > 0 &&
          clock_->NowMillis() - it->second.stored_at_millis > options_.ttl_millis;
      if (!expired) {
        hits_.fetch_add(1);
        return it->second.record;
      }
      entries_.erase(it);
    }
  }
  misses_.fetch_add(1);
  const uint64_t generation = generation_.load();
  auto record = store_->Get(kind, key);
  if (record && options_.enabled) {
    std::lock_guard lock(mu_);
    // An invalidation racing with the store read may have made `record`
    // stale; only cache when none happened.
    if (generation_.load() == generation) {
      auto& slot = entries_[{kind, key}];
      if (slot.cached_at_version <= record->version) {
        slot = Entry{*record, record->version, clock_->NowMillis()};
      }
    }
  }
  return record;
}

Record SpecCache::Get(RecordKind kind, const std::string& key) {
  auto r = Find(kind, key);
  if (!r) {
    throw Error(ErrorCode::kNotFound,
                std::string(ToString(kind)) + " '" + key + "' not found");
  }
  return *std::move(r);
}

uint64_t SpecCache::Put(RecordKind kind, const std::string& key,
                        nlohmann::json value,
                        std::optional<uint64_t> expected_version) {
  const uint64_t v = store_->Put(kind, key, std::move(value), expected_version);
  if (kind == RecordKind::kClass || kind == RecordKind::kFunction) {
    Invalidate(kind, key);
  }
  return v;
}

void SpecCache::Invalidate(RecordKind kind, const std::string& key) {
  std::lock_guard lock(mu_);
  generation_.fetch_add(1);
  entries_.erase({kind, key});
}

void SpecCache::Clear() {
  std::lock_guard lock(mu_);
  generation_.fetch_add(1);
  entries_.clear();
}

}  // namespace oaas::kv
