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

#ifndef OAAS_KV_METADATA_STORE_H_
#define OAAS_KV_METADATA_STORE_H_

#include <array>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace oaas::kv {

enum class RecordKind { kClass = 0, kFunction = 1, kObject = 2, kGraph = 3 };
inline constexpr size_t kRecordKindCount = 4;

std::string_view ToString(RecordKind kind);
/// Throws Error(kInvalidArgument) for an unknown name.
RecordKind RecordKindFromString(std::string_view name);

struct Record {
  RecordKind kind = RecordKind::kObject;
  std::string key;
  nlohmann::json value;
  uint64_t version = 0;

  bool operator==(const Record&) const = default;
};

/// Versioned key-value persistence for specs, object metadata and
/// invocation graphs. Every successful write bumps the key's version by one;
/// conditional writes implement compare-and-set.
///
/// Thread-safe. Records are copied in and out.
class MetadataStore {
 public:
  /// Observes every committed write with the previous record (if any).
  /// Runs under the store's write lock; must not call back into the store.
  using WriteHook =
      std::function<void(const Record* before, const Record& after)>;

  MetadataStore() = default;
  MetadataStore(const MetadataStore&) = delete;
  MetadataStore& operator=(const MetadataStore&) = delete;

  /// Create-or-overwrite when `expected_version` is empty; otherwise writes
  /// only if the current version equals it (0 means "absent"). Throws
  /// Error(kVersionConflict) with details {"current": version}.
  uint64_t Put(RecordKind kind, std::string_view key, nlohmann::json value,
               std::optional<uint64_t> expected_version = std::nullopt);

  struct Write {
    RecordKind kind = RecordKind::kObject;
    std::string key;
    nlohmann::json value;
    std::optional<uint64_t> expected_version;
  };

  /// All-or-nothing Put of several records: every expected version is
  /// checked before anything is written. Returns the new versions.
  std::vector<uint64_t> PutBatch(std::vector<Write> writes);

  std::optional<Record> Get(RecordKind kind, std::string_view key) const;

  /// Keys of `kind` starting with `prefix`, in lexicographic order.
  std::vector<std::string> ListKeys(RecordKind kind,
                                    std::string_view prefix = "") const;

  size_t Size() const;

  void SnapshotSave(const std::filesystem::path& path) const;
  /// Replaces the store contents. Throws Error(kCorruptSnapshot) on a bad
  /// header, malformed line or checksum mismatch, Error(kIo) if unreadable.
  void SnapshotLoad(const std::filesystem::path& path);

  /// Snapshot text; SnapshotSave writes exactly these bytes.
  std::string SnapshotText() const;
  void LoadSnapshotText(std::string_view text);

  void SetWriteHook(WriteHook hook);

  /// Number of Get() calls that reached the backing map, per kind.
  uint64_t reads(RecordKind kind) const {
    return reads_[static_cast<size_t>(kind)].load();
  }
  uint64_t writes() const { return writes_.load(); }

 private:
  using Key = std::pair<RecordKind, std::string>;

  mutable std::shared_mutex mu_;
  std::map<Key, Record, std::less<>> records_;
  WriteHook hook_;
  mutable std::array<std::atomic<uint64_t>, kRecordKindCount> reads_{};
  std::atomic<uint64_t> writes_{0};
};

}  // namespace oaas::kv

#endif  // OAAS_KV_METADATA_STORE_H_
