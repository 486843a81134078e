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

#include <chrono>
#include <list>
#include <random>
#include <thread>

#include <gtest/gtest.h>
#include <httplib.h>

#include "harness.h"
#include "oaas/client/api_client.h"
#include "oaas/common/digest.h"
#include "oaas/common/error.h"
#include "oaas/gateway/content_cache.h"
#include "oaas/gateway/instance_pool.h"
#include "oaas/gateway/routes.h"
#include "oaas/platform/config.h"
#include "oaas/platform/platform.h"

namespace oaas::gateway {
namespace {

using nlohmann::json;
using testing::ReadFile;

TEST(ContentCacheTest, LruMatchesReferenceModel) {
  // Reference: a plain list scanned linearly.
  constexpr uint64_t kCapacity = 1000;
  ContentCache cache(kCapacity);
  std::list<std::pair<std::string, size_t>> model;
  auto model_used = [&] {
    uint64_t u = 0;
    for (const auto& [_, s] : model) u += s;
    return u;
  };
  std::mt19937 rng(11);
  for (int step = 0; step < 5000; ++step) {
    const std::string key = "k" + std::to_string(rng() % 40);
    auto it = std::find_if(model.begin(), model.end(), [&](auto& e) { return e.first == key; });
    if (rng() % 2) {
      const bool hit = cache.Get(key).has_value();
      ASSERT_EQ(hit, it != model.end());
      if (it != model.end()) model.splice(model.begin(), model, it);
    } else {
      const size_t size = rng() % 300;
      const std::string bytes(size, 'x');
      cache.Put(key, bytes);
      if (it != model.end()) {
        model.splice(model.begin(), model, it);
      } else {
        while (model_used() + size > kCapacity && !model.empty()) model.pop_back();
        model.emplace_front(key, size);
      }
    }
    ASSERT_EQ(cache.entries(), model.size());
    ASSERT_EQ(cache.size_bytes(), model_used());
    ASSERT_LE(cache.size_bytes(), kCapacity);
  }
}

TEST(ContentCacheTest, OversizedAndDigest) {
  ContentCache cache(10);
  EXPECT_FALSE(cache.Put("a/b", std::string(11, 'x')));
  EXPECT_EQ(cache.entries(), 0u);
  EXPECT_TRUE(cache.Put("a/b", "abc"));
  EXPECT_EQ(cache.Get("a/b")->Digest(),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  cache.PutAlias("o:f()/k", "a/b");
  EXPECT_EQ(*cache.FindAlias("o:f()/k"), "a/b");
  EXPECT_FALSE(cache.FindAlias("other"));
}

TEST(InstancePoolTest, RoundRobinFailoverAndRecovery) {
  auto clock = std::make_shared<ManualClock>();
  InstancePool pool({"a", "b"}, 1000, clock);
  std::map<std::string, int> counts;
  for (int i = 0; i < 4; ++i) counts[pool.Next()->url]++;
  EXPECT_EQ(counts, (std::map<std::string, int>{{"a", 2}, {"b", 2}}));

  pool.MarkFailed(0);
  for (int i = 0; i < 6; ++i) EXPECT_EQ(pool.Next()->url, "b");

  clock->Advance(1000);
  counts.clear();
  for (int i = 0; i < 2; ++i) {
    const auto p = pool.Next();
    counts[p->url]++;
    pool.MarkHealthy(p->index);
  }
  EXPECT_EQ(counts["a"], 1);
  counts.clear();
  for (int i = 0; i < 4; ++i) counts[pool.Next()->url]++;
  EXPECT_EQ(counts, (std::map<std::string, int>{{"a", 2}, {"b", 2}}));

  pool.MarkFailed(0);
  pool.MarkFailed(1);
  EXPECT_FALSE(pool.Next());
}

TEST(ConfigTest, ParsesAndRejects) {
  const auto c = platform::Config::FromJson(
      {{"listenAddr", "0.0.0.0:9000"}, {"stateDeliveryMode", "relay"}, {"metadataCache", "off"}});
  EXPECT_EQ(c.state_delivery_mode, blob::DeliveryMode::kRelay);
  EXPECT_FALSE(c.metadata_cache);
  EXPECT_EQ(c.task_manager_instances, 2u);
  EXPECT_EQ(platform::Config::FromJson(c.ToJson()).ToJson(), c.ToJson());
  EXPECT_THROW(platform::Config::FromJson({{"bogus", 1}}), Error);
  EXPECT_THROW(platform::Config::FromJson({{"listenAddr", "nohost"}}), Error);
  EXPECT_THROW(platform::Config::FromJson({{"metadataCache", "maybe"}}), Error);
  EXPECT_THROW(platform::Config::FromJson({{"workerPoolSize", 0}}), Error);
  EXPECT_EQ(platform::ParseListenAddr("127.0.0.1:0"), (std::pair<std::string, int>{"127.0.0.1", 0}));
}

TEST(OaiTarget, StripsPrefixAndQuery) {
  EXPECT_EQ(OaiFromTarget("/oal/o1:f(a=%20)/k?x=1"), "o1:f(a=%20)/k");
  EXPECT_EQ(OaiFromTarget("/other"), "");
}

class PlatformTest : public ::testing::Test {
 protected:
  std::unique_ptr<platform::Platform> Boot(blob::DeliveryMode mode, size_t instances = 2,
                                           std::string snapshot = "") {
    platform::Config c;
    c.listen_addr = "127.0.0.1:0";
    c.blob_root = (root_ / "blobs").string();
    c.snapshot_path = snapshot;
    c.sync_timeout_secs = 10;
    c.state_delivery_mode = mode;
    c.task_manager_instances = instances;
    auto p = std::make_unique<platform::Platform>(c);
    p->Start();
    return p;
  }

  static httplib::Client Client(const platform::Platform& p) {
    httplib::Client cli(p.url());
    cli.set_read_timeout(30);
    return cli;
  }

  // Registers the text package and waits for its function to be ready,
  // then creates object `id` holding "hello" under "str".
  void Setup(platform::Platform& p, const std::string& id) {
    auto cli = Client(p);
    auto r = cli.Post("/api/packages", ReadFile(OAAS_PACKAGES_DIR "/text.yaml"), "application/yaml");
    ASSERT_TRUE(r);
    ASSERT_EQ(r->status, 200) << r->body;
    for (int i = 0; i < 200; ++i) {
      auto d = cli.Get("/api/deployments/example.concat");
      if (d && json::parse(d->body).value("state", "") == "ready") break;
      std::this_thread::sleep_for(std::chrono::milliseconds(10));
    }
    auto created = cli.Post("/api/classes/example.test1/objects",
                            json{{"id", id}, {"uploadKeys", {"str"}}}.dump(), "application/json");
    ASSERT_EQ(created->status, 201) << created->body;
    const std::string put_url = json::parse(created->body)["uploadUrls"]["str"];
    blob::HttpBlobClient().Put(put_url, "hello");
    auto confirmed = cli.Post("/api/objects/" + id + "/confirm", "", "application/json");
    ASSERT_EQ(confirmed->status, 200) << confirmed->body;
    EXPECT_EQ(json::parse(confirmed->body)["status"], "COMPLETED");
  }

  void TearDown() override { std::filesystem::remove_all(root_); }

  std::filesystem::path root_ = std::filesystem::temp_directory_path() /
                                ("oaas-gw-" + std::to_string(std::random_device{}()));
};

TEST_F(PlatformTest, SyncContentThroughGatewayAndCache) {
  auto p = Boot(blob::DeliveryMode::kRedirect);
  Setup(*p, "t1");
  auto cli = Client(*p);
  auto r = cli.Get("/oal/t1:concat(append=%20world)/str");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 200);
  EXPECT_EQ(r->body, "hello world");
  EXPECT_EQ(r->get_header_value("X-OaaS-Cache"), "miss");

  const uint64_t gets = p->blobs().gets();
  auto again = cli.Get("/oal/t1:concat(append=%20world)/str");
  EXPECT_EQ(again->body, "hello world");
  EXPECT_EQ(again->get_header_value("X-OaaS-Cache"), "hit");
  EXPECT_EQ(p->blobs().gets(), gets);

  // Audit: every cached entry matches the blob store byte for byte.
  const std::string object_id = r->get_header_value(kObjectHeader);
  const auto rec = kv::LoadObject(p->store(), object_id)->record;
  EXPECT_EQ(p->gateway().cache().Get(ContentCache::Key(object_id, "str"))->Digest(),
            Sha256Hex(p->blobs().ReadTrusted(rec.unstructured_keys.at("str"))));
}

TEST_F(PlatformTest, RedirectPassAndPlainRecord) {
  auto p = Boot(blob::DeliveryMode::kRedirect);
  Setup(*p, "t1");
  auto cli = Client(*p);
  const uint64_t fetches = p->gateway().blob_fetches();
  auto r = cli.Get("/oal/t1:concat(append=!)/str", {{kRedirectHeader, "pass"}});
  ASSERT_EQ(r->status, 303);
  EXPECT_EQ(blob::HttpBlobClient().Get(r->get_header_value("Location")), "hello!");
  EXPECT_EQ(p->gateway().blob_fetches(), fetches);

  auto rec = cli.Get("/oal/t1:concat(append=!)");
  ASSERT_EQ(rec->status, 200);
  EXPECT_EQ(json::parse(rec->body)["status"], "COMPLETED");
  EXPECT_EQ(cli.Get("/oal/t1/str")->body, "hello");
}

TEST_F(PlatformTest, RelayModeServesBytes) {
  auto p = Boot(blob::DeliveryMode::kRelay);
  Setup(*p, "t1");
  auto cli = Client(*p);
  auto r = cli.Get("/oal/t1:concat(append=x)/str", {{kRedirectHeader, "pass"}});
  EXPECT_EQ(r->status, 200);
  EXPECT_EQ(r->body, "hellox");
}

TEST_F(PlatformTest, ArgumentSeparatorsSurviveForwarding) {
  auto p = Boot(blob::DeliveryMode::kRedirect);
  Setup(*p, "t1");
  auto cli = Client(*p);
  cli.set_url_encode(false);
  // An escaped comma is data; a raw one separates arguments.
  auto r = cli.Get("/oal/t1:concat(append=%2C,unused=1)/str");
  ASSERT_EQ(r->status, 200) << r->body;
  EXPECT_EQ(r->body, "hello,");

  client::ApiClient api(p->url());
  const auto spaced = api.Invoke("t1:concat(append= a b,unused=2)/str", true);
  ASSERT_TRUE(spaced.content);
  EXPECT_EQ(*spaced.content, "hello a b");
}

TEST_F(PlatformTest, ErrorStatuses) {
  auto p = Boot(blob::DeliveryMode::kRedirect);
  Setup(*p, "t1");
  auto cli = Client(*p);
  auto bad = cli.Get("/oal/badsyntax(((");
  EXPECT_EQ(bad->status, 400);
  EXPECT_TRUE(json::parse(bad->body)["details"].contains("offset"));
  EXPECT_EQ(cli.Get("/oal/ghost:concat(append=x)/str")->status, 404);
  EXPECT_EQ(cli.Get("/oal/t1:nosuch()")->status, 404);
  EXPECT_EQ(cli.Get("/api/objects/ghost")->status, 404);
  EXPECT_EQ(cli.Post("/api/packages", "name: [", "application/yaml")->status, 400);
  EXPECT_EQ(cli.Post("/api/invocations", "{\"oai\":\"ghost:concat()\"}", "application/json")->status,
            404);
  EXPECT_EQ(cli.Post("/api/invocations", "not json", "application/json")->status, 400);
}

TEST_F(PlatformTest, AsyncInvocationThenPoll) {
  auto p = Boot(blob::DeliveryMode::kRedirect);
  Setup(*p, "t1");
  auto cli = Client(*p);
  auto r = cli.Post("/api/invocations", json{{"oai", "t1:concat(append=zz)"}, {"async", true}}.dump(),
                    "application/json");
  ASSERT_EQ(r->status, 202) << r->body;
  const json prospective = json::parse(r->body);
  EXPECT_EQ(prospective["status"], "PENDING");
  json st;
  for (int i = 0; i < 500; ++i) {
    st = json::parse(cli.Get("/api/objects/" + prospective["id"].get<std::string>())->body);
    if (st["status"] == "COMPLETED") break;
    std::this_thread::sleep_for(std::chrono::milliseconds(10));
  }
  EXPECT_EQ(st["status"], "COMPLETED");
  EXPECT_EQ(st["availableContentKeys"], json::array({"str"}));
}

TEST_F(PlatformTest, SurvivesInstanceOutage) {
  auto p = Boot(blob::DeliveryMode::kRedirect);
  Setup(*p, "t1");
  auto cli = Client(*p);
  p->StopInstance(0);
  for (int i = 0; i < 4; ++i) {
    auto r = cli.Get("/oal/t1:concat(append=" + std::to_string(i) + ")/str");
    ASSERT_TRUE(r);
    EXPECT_EQ(r->status, 200);
  }
  EXPECT_FALSE(p->gateway().pool().healthy(0));
  p->StartInstance(0);
  std::this_thread::sleep_for(std::chrono::milliseconds(1100));
  for (int i = 0; i < 4; ++i) cli.Get("/api/objects/t1");
  EXPECT_TRUE(p->gateway().pool().healthy(0));
}

TEST_F(PlatformTest, SnapshotRestoresObjects) {
  const std::string snap = (root_ / "store.snap").string();
  {
    auto p = Boot(blob::DeliveryMode::kRedirect, 1, snap);
    std::filesystem::create_directories(root_);
    Setup(*p, "t1");
  }
  auto p = Boot(blob::DeliveryMode::kRedirect, 1, snap);
  auto cli = Client(*p);
  auto st = cli.Get("/api/objects/t1");
  ASSERT_EQ(st->status, 200);
  EXPECT_EQ(json::parse(st->body)["status"], "COMPLETED");
  std::string state;
  for (int i = 0; i < 200 && state != "ready"; ++i) {
    std::this_thread::sleep_for(std::chrono::milliseconds(10));
    state = json::parse(cli.Get("/api/deployments/example.concat")->body).value("state", "");
  }
  EXPECT_EQ(cli.Get("/oal/t1:concat(append=2)/str")->body, "hello2");
}

}  // namespace
}  // namespace oaas::gateway
