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

#include "oaas/kv/metadata_store.h"

#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>

#include "oaas/common/digest.h"
#include "oaas/common/error.h"

namespace oaas::kv {
namespace {

constexpr std::string_view kHeader = "OAAS-KV 1\n";
constexpr std::string_view kTrailerTag = "CRC32 ";

}  // namespace

std::string_view ToString(RecordKind kind) {
  switch (kind) {
    case RecordKind::kClass:
      return "class";
    case RecordKind::kFunction:
      return "function";
    case RecordKind::kObject:
      return "object";
    case RecordKind::kGraph:
      return "graph";
  }
  return "object";
}

RecordKind RecordKindFromString(std::string_view name) {
  for (auto k : {RecordKind::kClass, RecordKind::kFunction, RecordKind::kObject,
                 RecordKind::kGraph}) {
    if (ToString(k) == name) return k;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown record kind '" + std::string(name) + "'");
}

uint64_t MetadataStore::Put(RecordKind kind, std::string_view key,
                            nlohmann::json value,
                            std::optional<uint64_t> expected_version) {
  std::unique_lock lock(mu_);
  Key k{kind, std::string(key)};
  auto it = records_.find(k);
  const uint64_t current = it == records_.end() ? 0 : it->second.version;
  if (expected_version && *expected_version != current) {
    throw Error(ErrorCode::kVersionConflict,
                std::string(ToString(kind)) + " '" + std::string(key) +
                    "' is at version " + std::to_string(current) +
                    ", expected " + std::to_string(*expected_version),
                {{"current", current}});
  }
  Record next{kind, std::string(key), std::move(value), current + 1};
  if (hook_) hook_(it == records_.end() ? nullptr : &it->second, next);
  if (it == records_.end()) {
    records_.emplace(std::move(k), std::move(next));
  } else {
    it->second = std::move(next);
  }
  writes_.fetch_add(1);
  return current + 1;
}

std::vector<uint64_t> MetadataStore::PutBatch(std::vector<Write> writes) {
  std::unique_lock lock(mu_);
  std::vector<uint64_t> versions;
  for (const auto& w : writes) {
    auto it = records_.find(Key{w.kind, w.key});
    const uint64_t current = it == records_.end() ? 0 : it->second.version;
    if (w.expected_version && *w.expected_version != current) {
      throw Error(ErrorCode::kVersionConflict,
                  std::string(ToString(w.kind)) + " '" + w.key + "' is at version " +
                      std::to_string(current) + ", expected " +
                      std::to_string(*w.expected_version),
                  {{"current", current}, {"key", w.key}});
    }
  }
  for (auto& w : writes) {
    Key k{w.kind, w.key};
    auto it = records_.find(k);
    const uint64_t current = it == records_.end() ? 0 : it->second.version;
    Record next{w.kind, w.key, std::move(w.value), current + 1};
    if (hook_) hook_(it == records_.end() ? nullptr : &it->second, next);
    records_.insert_or_assign(std::move(k), std::move(next));
    writes_.fetch_add(1);
    versions.push_back(current + 1);
  }
  return versions;
}

std::optional<Record> MetadataStore::Get(RecordKind kind,
                                         std::string_view key) const {
  reads_[static_cast<size_t>(kind)].fetch_add(1);
  std::shared_lock lock(mu_);
  auto it = records_.find(Key{kind, std::string(key)});
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> MetadataStore::ListKeys(RecordKind kind,
                                                 std::string_view prefix) const {
  std::shared_lock lock(mu_);
  std::vector<std::string> out;
  for (auto it = records_.lower_bound(Key{kind, std::string(prefix)});
       it != records_.end() && it->first.first == kind; ++it) {
    if (!it->first.second.starts_with(prefix)) break;
    out.push_back(it->first.second);
  }
  return out;
}

size_t MetadataStore::Size() const {
  std::shared_lock lock(mu_);
  return records_.size();
}

void MetadataStore::SetWriteHook(WriteHook hook) {
  std::unique_lock lock(mu_);
  hook_ = std::move(hook);
}

std::string MetadataStore::SnapshotText() const {
  std::string body(kHeader);
  {
    std::shared_lock lock(mu_);
    for (const auto& [_, r] : records_) {
      const nlohmann::json line = {{"kind", ToString(r.kind)},
                                   {"key", r.key},
                                   {"version", r.version},
                                   {"value", r.value}};
      body += line.dump();
      body += '\n';
    }
  }
  char crc[16];
  std::snprintf(crc, sizeof(crc), "%08x", Crc32(body));
  body += kTrailerTag;
  body += crc;
  body += '\n';
  return body;
}

void MetadataStore::LoadSnapshotText(std::string_view text) {
  auto corrupt = [](const std::string& why) {
    return Error(ErrorCode::kCorruptSnapshot, "corrupt snapshot: " + why);
  };
  if (!text.starts_with(kHeader)) throw corrupt("bad header");
  if (text.empty() || text.back() != '\n') throw corrupt("missing trailer");
  const auto trailer_start = text.rfind('\n', text.size() - 2);
  if (trailer_start == std::string_view::npos || trailer_start + 1 < kHeader.size()) {
    throw corrupt("missing trailer");
  }
  const std::string_view body = text.substr(0, trailer_start + 1);
  const std::string_view trailer =
      text.substr(trailer_start + 1, text.size() - trailer_start - 2);
  if (!trailer.starts_with(kTrailerTag)) throw corrupt("missing trailer");
  char expected[16];
  std::snprintf(expected, sizeof(expected), "%08x", Crc32(body));
  if (trailer.substr(kTrailerTag.size()) != expected) {
    throw corrupt("checksum mismatch");
  }

  std::map<Key, Record, std::less<>> loaded;
  size_t pos = kHeader.size();
  while (pos < body.size()) {
    const size_t end = body.find('\n', pos);
    const std::string_view line = body.substr(pos, end - pos);
    pos = end + 1;
    try {
      const auto j = nlohmann::json::parse(line);
      Record r{RecordKindFromString(j.at("kind").get<std::string>()),
               j.at("key").get<std::string>(), j.at("value"),
               j.at("version").get<uint64_t>()};
      Key k{r.kind, r.key};
      loaded.emplace(std::move(k), std::move(r));
    } catch (const std::exception& e) {
      throw corrupt(std::string("bad record: ") + e.what());
    }
  }
  std::unique_lock lock(mu_);
  records_ = std::move(loaded);
}

void MetadataStore::SnapshotSave(const std::filesystem::path& path) const {
  const std::string text = SnapshotText();
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw Error(ErrorCode::kIo, "cannot write snapshot " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot rename snapshot: " + ec.message());
}

void MetadataStore::SnapshotLoad(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read snapshot " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  LoadSnapshotText(ss.str());
}

}  // namespace oaas::kv
