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

#ifndef OAAS_KV_SPEC_CACHE_H_
#define OAAS_KV_SPEC_CACHE_H_

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "oaas/common/clock.h"
#include "oaas/kv/metadata_store.h"

namespace oaas::kv {

/// Per-component in-memory tier for class and function spec records, which
/// are read on every invocation but rarely written. Object and graph records
/// never pass through here.
///
/// Entries are dropped on a local Put to the same key, on Invalidate(), or
/// once older than the TTL (bounds staleness for writes made by other
/// components). When disabled every read goes to the store.
class SpecCache {
 public:
  struct Options {
    bool enabled = true;
    int64_t ttl_millis = 5000;  // <= 0 disables expiry
  };

  SpecCache(std::shared_ptr<MetadataStore> store, Options options,
            std::shared_ptr<Clock> clock = DefaultClock());

  /// Throws Error(kInvalidArgument) for object/graph kinds and
  /// Error(kNotFound) when the record is absent.
  Record Get(RecordKind kind, const std::string& key);
  std::optional<Record> Find(RecordKind kind, const std::string& key);

  /// Writes through to the store and drops the cached entry.
  uint64_t Put(RecordKind kind, const std::string& key, nlohmann::json value,
               std::optional<uint64_t> expected_version = std::nullopt);

  void Invalidate(RecordKind kind, const std::string& key);
  void Clear();

  bool enabled() const { return options_.enabled; }
  uint64_t hits() const { return hits_.load(); }
  uint64_t misses() const { return misses_.load(); }
  MetadataStore& store() { return *store_; }

 private:
  struct Entry {
    Record record;
    uint64_t cached_at_version = 0;
    int64_t stored_at_millis = 0;
  };

  std::shared_ptr<MetadataStore> store_;
  Options options_;
  std::shared_ptr<Clock> clock_;
  std::mutex mu_;
  std::map<std::pair<RecordKind, std::string>, Entry> entries_;
  std::atomic<uint64_t> generation_{0};
  std::atomic<uint64_t> hits_{0};
  std::atomic<uint64_t> misses_{0};
};

}  // namespace oaas::kv

#endif  // OAAS_KV_SPEC_CACHE_H_
