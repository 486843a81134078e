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

#include <filesystem>
#include <random>
#include <thread>

#include <gtest/gtest.h>

#include "oaas/common/digest.h"
#include "oaas/common/error.h"
#include "oaas/kv/metadata_store.h"
#include "oaas/kv/object_record.h"
#include "oaas/kv/spec_cache.h"

namespace oaas::kv {
namespace {

using nlohmann::json;

TEST(MetadataStore, CompareAndSwap) {
  MetadataStore store;
  EXPECT_EQ(store.Put(RecordKind::kObject, "a", {{"v", 1}}, 0), 1u);
  EXPECT_EQ(store.Put(RecordKind::kObject, "a", {{"v", 2}}, 1), 2u);
  try {
    store.Put(RecordKind::kObject, "a", {{"v", 3}}, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kVersionConflict);
    EXPECT_EQ(e.details().at("current"), 2);
  }
  EXPECT_THROW(store.Put(RecordKind::kObject, "a", {}, 0), Error);
  EXPECT_THROW(store.Put(RecordKind::kObject, "new", {}, 5), Error);
  EXPECT_EQ(store.Get(RecordKind::kObject, "a")->value.at("v"), 2);
  EXPECT_FALSE(store.Get(RecordKind::kClass, "a"));
  EXPECT_EQ(store.Put(RecordKind::kObject, "a", {{"v", 9}}), 3u);
}

TEST(MetadataStore, ListKeysByPrefix) {
  MetadataStore store;
  for (const char* k : {"p.b", "p.a", "q.a", "p"}) store.Put(RecordKind::kClass, k, {});
  store.Put(RecordKind::kFunction, "p.z", {});
  EXPECT_EQ(store.ListKeys(RecordKind::kClass, "p."),
            (std::vector<std::string>{"p.a", "p.b"}));
  EXPECT_EQ(store.ListKeys(RecordKind::kClass).size(), 4u);
  EXPECT_EQ(store.Size(), 5u);
}

TEST(MetadataStore, ConcurrentCasCounterLosesNoUpdates) {
  MetadataStore store;
  store.Put(RecordKind::kObject, "counter", {{"n", 0}}, 0);
  constexpr int kThreads = 8;
  constexpr int kIncrements = 250;
  std::vector<std::thread> threads;
  for (int t = 0; t < kThreads; ++t) {
    threads.emplace_back([&] {
      for (int i = 0; i < kIncrements; ++i) {
        for (;;) {
          const auto rec = *store.Get(RecordKind::kObject, "counter");
          try {
            store.Put(RecordKind::kObject, "counter",
                      {{"n", rec.value.at("n").get<int>() + 1}}, rec.version);
            break;
          } catch (const Error&) {
          }
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  const auto rec = *store.Get(RecordKind::kObject, "counter");
  EXPECT_EQ(rec.value.at("n"), kThreads * kIncrements);
  EXPECT_EQ(rec.version, 1u + kThreads * kIncrements);
}

TEST(MetadataStore, WriteHookSeesBeforeAndAfter) {
  MetadataStore store;
  std::vector<std::pair<bool, uint64_t>> seen;
  store.SetWriteHook([&](const Record* before, const Record& after) {
    seen.emplace_back(before != nullptr, after.version);
  });
  store.Put(RecordKind::kGraph, "g", {});
  store.Put(RecordKind::kGraph, "g", {});
  EXPECT_EQ(seen, (std::vector<std::pair<bool, uint64_t>>{{false, 1}, {true, 2}}));
}

void FillRandom(MetadataStore& store, std::mt19937& rng, int n) {
  for (int i = 0; i < n; ++i) {
    const auto kind = static_cast<RecordKind>(rng() % kRecordKindCount);
    json v = {{"i", i}, {"s", std::string(rng() % 20, 'x')}, {"nested", {{"ok", true}}}};
    store.Put(kind, "k" + std::to_string(rng() % 50), v);
  }
}

TEST(MetadataStore, SnapshotRoundTrip) {
  std::mt19937 rng(5);
  MetadataStore a;
  FillRandom(a, rng, 300);
  const auto path = std::filesystem::temp_directory_path() / ("kvsnap-" + std::to_string(rng()));
  a.SnapshotSave(path);
  MetadataStore b;
  b.Put(RecordKind::kClass, "stale", {});
  b.SnapshotLoad(path);
  EXPECT_EQ(b.SnapshotText(), a.SnapshotText());
  EXPECT_EQ(b.Size(), a.Size());
  for (size_t k = 0; k < kRecordKindCount; ++k) {
    const auto kind = static_cast<RecordKind>(k);
    for (const auto& key : a.ListKeys(kind)) {
      EXPECT_EQ(*a.Get(kind, key), *b.Get(kind, key));
    }
  }
  EXPECT_FALSE(b.Get(RecordKind::kClass, "stale"));
  std::filesystem::remove(path);
}

TEST(MetadataStore, SnapshotFormatChecksumIsCrc32OfBody) {
  MetadataStore store;
  store.Put(RecordKind::kClass, "x", {{"a", 1}});
  const std::string text = store.SnapshotText();
  const auto trailer = text.rfind("CRC32 ");
  ASSERT_NE(trailer, std::string::npos);
  char expected[16];
  std::snprintf(expected, sizeof(expected), "%08x", Crc32(text.substr(0, trailer)));
  EXPECT_EQ(text.substr(trailer + 6, 8), expected);
  EXPECT_TRUE(text.starts_with("OAAS-KV 1\n"));
}

TEST(MetadataStore, TruncatedSnapshotIsRejectedAtEveryCut) {
  std::mt19937 rng(9);
  MetadataStore a;
  FillRandom(a, rng, 20);
  const std::string text = a.SnapshotText();
  for (size_t cut = 0; cut < text.size(); ++cut) {
    MetadataStore b;
    b.Put(RecordKind::kClass, "keep", {});
    try {
      b.LoadSnapshotText(std::string_view(text).substr(0, cut));
      FAIL() << "accepted truncation at " << cut;
    } catch (const Error& e) {
      ASSERT_EQ(e.code(), ErrorCode::kCorruptSnapshot);
    }
    ASSERT_TRUE(b.Get(RecordKind::kClass, "keep"));
  }
}

TEST(MetadataStore, CorruptedByteIsRejected) {
  MetadataStore a;
  a.Put(RecordKind::kObject, "o", {{"x", "hello"}});
  std::string text = a.SnapshotText();
  text[text.find("hello")] = 'j';
  MetadataStore b;
  EXPECT_THROW(b.LoadSnapshotText(text), Error);
  MetadataStore c;
  EXPECT_THROW(c.SnapshotLoad("/nonexistent/snapshot"), Error);
}

TEST(SpecCache, HundredReadsHitBackingOnce) {
  auto store = std::make_shared<MetadataStore>();
  store->Put(RecordKind::kClass, "p.c", {{"name", "c"}});
  auto clock = std::make_shared<ManualClock>();
  SpecCache cache(store, {}, clock);
  for (int i = 0; i < 100; ++i) cache.Get(RecordKind::kClass, "p.c");
  EXPECT_EQ(store->reads(RecordKind::kClass), 1u);
  EXPECT_EQ(cache.hits(), 99u);
}

TEST(SpecCache, DisabledReadsEveryTime) {
  auto store = std::make_shared<MetadataStore>();
  store->Put(RecordKind::kFunction, "p.f", {});
  SpecCache cache(store, {.enabled = false});
  for (int i = 0; i < 10; ++i) cache.Get(RecordKind::kFunction, "p.f");
  EXPECT_EQ(store->reads(RecordKind::kFunction), 10u);
}

TEST(SpecCache, TtlExpiryAndInvalidation) {
  auto store = std::make_shared<MetadataStore>();
  store->Put(RecordKind::kClass, "p.c", {{"v", 1}});
  auto clock = std::make_shared<ManualClock>();
  SpecCache cache(store, {.enabled = true, .ttl_millis = 5000}, clock);
  EXPECT_EQ(cache.Get(RecordKind::kClass, "p.c").value.at("v"), 1);

  // A write from another component is visible only after the TTL.
  store->Put(RecordKind::kClass, "p.c", {{"v", 2}});
  clock->Advance(4999);
  EXPECT_EQ(cache.Get(RecordKind::kClass, "p.c").value.at("v"), 1);
  clock->Advance(2);
  EXPECT_EQ(cache.Get(RecordKind::kClass, "p.c").value.at("v"), 2);

  // A local write is visible immediately.
  cache.Put(RecordKind::kClass, "p.c", {{"v", 3}});
  EXPECT_EQ(cache.Get(RecordKind::kClass, "p.c").value.at("v"), 3);
}

TEST(SpecCache, RejectsObjectKindsAndMissingKeys) {
  auto store = std::make_shared<MetadataStore>();
  SpecCache cache(store, {});
  try {
    cache.Get(RecordKind::kObject, "x");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
  try {
    cache.Get(RecordKind::kClass, "nope");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotFound);
  }
  EXPECT_FALSE(cache.Find(RecordKind::kClass, "nope"));
}

TEST(ObjectRecord, JsonRoundTrip) {
  ObjectRecord r;
  r.id = "obj1";
  r.class_name = "example.test1";
  r.class_version = 4;
  r.status = ObjectStatus::kFailed;
  r.structured_state = {{"pairs", {{"a", "b"}}}};
  r.unstructured_keys.emplace("str", BlobPath("s3", "obj1", "str"));
  r.origin = ObjectOrigin{{"src", "in1"}, "concat", {{"append", "x"}}, "g1", "n1"};
  r.failure_cause = "boom";
  r.created_at = 10;
  r.updated_at = 11;
  const json j = r.ToJson();
  EXPECT_EQ(j.at("status"), "FAILED");
  EXPECT_EQ(j.at("origin").at("graphId"), "g1");
  EXPECT_EQ(ObjectRecord::FromJson(j), r);

  ObjectRecord plain;
  plain.id = "p";
  plain.class_name = "x.y";
  EXPECT_EQ(ObjectRecord::FromJson(plain.ToJson()), plain);
}

TEST(ObjectRecord, LoadObjectCarriesVersion) {
  MetadataStore store;
  ObjectRecord r;
  r.id = "o";
  r.class_name = "p.c";
  store.Put(RecordKind::kObject, "o", r.ToJson());
  store.Put(RecordKind::kObject, "o", r.ToJson());
  const auto loaded = LoadObject(store, "o");
  ASSERT_TRUE(loaded);
  EXPECT_EQ(loaded->version, 2u);
  EXPECT_EQ(loaded->record, r);
  EXPECT_FALSE(LoadObject(store, "missing"));
}

}  // namespace
}  // namespace oaas::kv
