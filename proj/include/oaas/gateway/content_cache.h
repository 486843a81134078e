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

#ifndef OAAS_GATEWAY_CONTENT_CACHE_H_
#define OAAS_GATEWAY_CONTENT_CACHE_H_

#include <atomic>
#include <cstdint>
#include <list>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

#include "oaas/common/clock.h"

namespace oaas::gateway {

struct ContentCacheEntry {
  std::string cache_key;  // objectId "/" stateKey
  std::shared_ptr<const std::string> bytes;
  uint64_t size_bytes = 0;
  int64_t stored_at = 0;
  /// SHA-256 hex, computed on first request so inserts stay cheap.
  std::string Digest() const;

 private:
  mutable std::shared_ptr<std::string> digest_ = std::make_shared<std::string>();
  mutable std::shared_ptr<std::mutex> digest_mu_ = std::make_shared<std::mutex>();
};

/// Byte-bounded LRU of object content. Only COMPLETED objects are ever
/// inserted and they never change, so entries leave only by eviction.
/// Also remembers which (object, key) a canonical OAI expression produced.
class ContentCache {
 public:
  explicit ContentCache(uint64_t capacity_bytes, std::shared_ptr<Clock> clock = DefaultClock(),
                        size_t alias_capacity = 100'000);

  static std::string Key(const std::string& object_id, const std::string& state_key);

  std::optional<ContentCacheEntry> Get(const std::string& cache_key);
  /// Returns false when the content alone exceeds the capacity.
  bool Put(const std::string& cache_key, std::string bytes);

  std::optional<std::string> FindAlias(const std::string& expression);
  void PutAlias(const std::string& expression, const std::string& cache_key);

  uint64_t capacity_bytes() const { return capacity_; }
  uint64_t size_bytes() const;
  size_t entries() const;
  uint64_t hits() const { return hits_.load(); }
  uint64_t misses() const { return misses_.load(); }

 private:
  uint64_t capacity_;
  std::shared_ptr<Clock> clock_;
  size_t alias_capacity_;

  mutable std::mutex mu_;
  std::list<ContentCacheEntry> lru_;  // front is most recent
  std::unordered_map<std::string, std::list<ContentCacheEntry>::iterator> index_;
  uint64_t used_ = 0;

  std::list<std::pair<std::string, std::string>> alias_lru_;
  std::unordered_map<std::string, std::list<std::pair<std::string, std::string>>::iterator>
      alias_index_;

  std::atomic<uint64_t> hits_{0};
  std::atomic<uint64_t> misses_{0};
};

}  // namespace oaas::gateway

#endif  // OAAS_GATEWAY_CONTENT_CACHE_H_
