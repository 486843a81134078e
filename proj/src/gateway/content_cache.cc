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

#include "oaas/gateway/content_cache.h"

#include "oaas/common/digest.h"

namespace oaas::gateway {

std::string ContentCacheEntry::Digest() const {
  std::lock_guard lock(*digest_mu_);
  if (digest_->empty()) *digest_ = Sha256Hex(*bytes);
  return *digest_;
}

ContentCache::ContentCache(uint64_t capacity_bytes, std::shared_ptr<Clock> clock,
                           size_t alias_capacity)
    : capacity_(capacity_bytes), clock_(std::move(clock)), alias_capacity_(alias_capacity) {}

std::string ContentCache::Key(const std::string& object_id, const std::string& state_key) {
  return object_id + "/" + state_key;
}

std::optional<ContentCacheEntry> ContentCache::Get(const std::string& cache_key) {
  std::lock_guard lock(mu_);
  auto it = index_.find(cache_key);
  if (it == index_.end()) {
    misses_.fetch_add(1);
    return std::nullopt;
  }
  lru_.splice(lru_.begin(), lru_, it->second);
  hits_.fetch_add(1);
  return *it->second;
}

bool ContentCache::Put(const std::string& cache_key, std::string bytes) {
  if (bytes.size() > capacity_) return false;
  ContentCacheEntry entry;
  entry.cache_key = cache_key;
  entry.size_bytes = bytes.size();
  entry.stored_at = clock_->NowMillis();
  entry.bytes = std::make_shared<const std::string>(std::move(bytes));

  std::lock_guard lock(mu_);
  if (auto it = index_.find(cache_key); it != index_.end()) {
    // Same immutable content; just refresh recency.
    lru_.splice(lru_.begin(), lru_, it->second);
    return true;
  }
  while (used_ + entry.size_bytes > capacity_ && !lru_.empty()) {
    used_ -= lru_.back().size_bytes;
    index_.erase(lru_.back().cache_key);
    lru_.pop_back();
  }
  used_ += entry.size_bytes;
  lru_.push_front(std::move(entry));
  index_[cache_key] = lru_.begin();
  return true;
}

std::optional<std::string> ContentCache::FindAlias(const std::string& expression) {
  std::lock_guard lock(mu_);
  auto it = alias_index_.find(expression);
  if (it == alias_index_.end()) return std::nullopt;
  alias_lru_.splice(alias_lru_.begin(), alias_lru_, it->second);
  return it->second->second;
}

void ContentCache::PutAlias(const std::string& expression, const std::string& cache_key) {
  std::lock_guard lock(mu_);
  if (auto it = alias_index_.find(expression); it != alias_index_.end()) {
    it->second->second = cache_key;
    alias_lru_.splice(alias_lru_.begin(), alias_lru_, it->second);
    return;
  }
  if (alias_lru_.size() >= alias_capacity_) {
    alias_index_.erase(alias_lru_.back().first);
    alias_lru_.pop_back();
  }
  alias_lru_.emplace_front(expression, cache_key);
  alias_index_[expression] = alias_lru_.begin();
}

uint64_t ContentCache::size_bytes() const {
  std::lock_guard lock(mu_);
  return used_;
}

size_t ContentCache::entries() const {
  std::lock_guard lock(mu_);
  return lru_.size();
}

}  // namespace oaas::gateway
