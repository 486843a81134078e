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

#include <thread>

#include <gtest/gtest.h>
#include <httplib.h>

#include "harness.h"
#include "oaas/common/error.h"
#include "oaas/model/parser.h"

namespace oaas::control {
namespace {

using nlohmann::json;
using testing::Harness;
using testing::ReadFile;

const std::string kTextPackage = ReadFile(OAAS_PACKAGES_DIR "/text.yaml");

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

TEST(RegisterPackage, TextPackagePersistsAndEnqueues) {
  Harness h;
  const auto r = h.controller->RegisterPackageText(kTextPackage);
  EXPECT_EQ(r.classes, (std::map<std::string, uint64_t>{{"example.test1", 1}}));
  EXPECT_EQ(r.functions, (std::map<std::string, uint64_t>{{"example.concat", 1}}));
  ASSERT_EQ(r.provisions.size(), 1u);
  EXPECT_EQ(r.provisions[0].action, ProvisionAction::kDeploy);
  EXPECT_EQ(h.queue->Pending(), 1u);
  EXPECT_EQ(h.controller->Deployment("example.concat")->state, DeploymentState::kPending);
  EXPECT_TRUE(h.store->Get(kv::RecordKind::kClass, "example.test1"));
}

TEST(RegisterPackage, ReRegistrationBumpsVersionsAndUpdates) {
  Harness h;
  h.controller->RegisterPackageText(kTextPackage);
  const auto r = h.controller->RegisterPackageText(kTextPackage);
  EXPECT_EQ(r.classes.at("example.test1"), 2u);
  EXPECT_EQ(r.functions.at("example.concat"), 2u);
  EXPECT_EQ(r.provisions.at(0).action, ProvisionAction::kUpdate);
}

TEST(RegisterPackage, FailingPackageWritesNothing) {
  Harness h;
  h.Deploy(kTextPackage);
  const size_t before = h.store->Size();
  const uint64_t writes = h.store->writes();
  const std::string bad = R"(
name: broken
classes:
  - name: good
  - name: bad
    functions:
      - {name: f, function: nosuch, outputClass: good}
functions:
  - {name: g, type: task, executor: {mode: builtin, target: concat}}
)";
  try {
    h.controller->RegisterPackageText(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kValidationFailed);
    EXPECT_FALSE(e.details().at("ok"));
    EXPECT_EQ(e.details().at("errors")[0]["path"], "classes[1].functions[0].function");
  }
  EXPECT_EQ(h.store->Size(), before);
  EXPECT_EQ(h.store->writes(), writes);
  EXPECT_EQ(h.queue->Pending(), 0u);
}

TEST(RegisterPackage, MacrosAreNotProvisioned) {
  Harness h;
  const auto r = h.controller->RegisterPackageText(R"(
name: m
classes:
  - name: c
    stateKeys: [{key: pairs, form: structured}]
    functions:
      - {name: up, function: json_update, outputClass: c}
      - {name: twice, function: twice, outputClass: c}
functions:
  - {name: json_update, type: task, executor: {mode: builtin, target: json_update}}
  - name: twice
    type: macro
    macro:
      steps:
        - {as: a, target: $self, function: up}
        - {as: b, target: a, function: up}
      output: b
)");
  EXPECT_EQ(r.functions.size(), 2u);
  EXPECT_EQ(r.provisions.size(), 1u);
}

TEST(ProvisionQueueTest, FifoAndVisibility) {
  auto clock = std::make_shared<ManualClock>();
  ProvisionQueue q(std::nullopt, 10'000, clock);
  q.Enqueue({"p.a", 1, ProvisionAction::kDeploy});
  q.Enqueue({"p.b", 1, ProvisionAction::kDeploy});
  auto a = q.Dequeue();
  auto b = q.Dequeue();
  ASSERT_TRUE(a && b);
  EXPECT_EQ(a->request.function_name, "p.a");
  EXPECT_EQ(b->request.function_name, "p.b");
  EXPECT_FALSE(q.Dequeue());

  q.Ack(b->receipt);
  clock->Advance(10'001);
  auto again = q.Dequeue();
  ASSERT_TRUE(again);
  EXPECT_EQ(again->request.function_name, "p.a");
  q.Ack(again->receipt);
  for (int i = 0; i < 100; ++i) {
    clock->Advance(20'000);
    EXPECT_FALSE(q.Dequeue());
  }
  EXPECT_EQ(q.Pending(), 0u);
}

TEST(ProvisionQueueTest, JournalSurvivesRestart) {
  const auto path = std::filesystem::temp_directory_path() /
                    ("queue-" + std::to_string(std::random_device{}()));
  {
    ProvisionQueue q(path);
    q.Enqueue({"p.a", 1, ProvisionAction::kDeploy});
    q.Enqueue({"p.b", 2, ProvisionAction::kUpdate});
    auto d = q.Dequeue();
    q.Ack(d->receipt);
    q.Dequeue();  // in flight when the process dies
  }
  {
    std::ofstream torn(path, std::ios::app);
    torn << "{\"op\":\"enq";
  }
  ProvisionQueue q(path);
  EXPECT_EQ(q.Pending(), 1u);
  auto d = q.Dequeue();
  ASSERT_TRUE(d);
  EXPECT_EQ(d->request, (ProvisionRequest{"p.b", 2, ProvisionAction::kUpdate}));
  q.Enqueue({"p.c", 1, ProvisionAction::kDeploy});
  EXPECT_NE(q.Dequeue()->receipt, d->receipt);
  std::filesystem::remove(path);
}

TEST(ProvisionerTest, BuiltinReadyAndUnknownBuiltinFailed) {
  Harness h;
  h.Deploy(kTextPackage);
  EXPECT_EQ(h.controller->Deployment("example.concat")->state, DeploymentState::kReady);
  EXPECT_EQ(h.routes->size(), 1u);

  h.Deploy(R"(
name: other
functions:
  - {name: f, type: task, executor: {mode: builtin, target: nosuch}}
)");
  const auto st = h.controller->Deployment("other.f");
  EXPECT_EQ(st->state, DeploymentState::kFailed);
  EXPECT_EQ(st->detail, "unknown builtin");
  EXPECT_FALSE(h.routes->Find("other.f"));
}

TEST(ProvisionerTest, RemoteProbe) {
  Harness h;
  httplib::Server server;
  std::atomic<int> health_status{200};
  server.Get("/healthz", [&](const httplib::Request&, httplib::Response& res) {
    res.status = health_status;
  });
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread t([&] { server.listen_after_bind(); });
  server.wait_until_ready();
  const std::string doc = "name: r\nfunctions:\n  - {name: f, type: task, executor: "
                          "{mode: remote-http, target: \"http://127.0.0.1:" +
                          std::to_string(port) + "\"}}\n";
  h.Deploy(doc);
  EXPECT_EQ(h.controller->Deployment("r.f")->state, DeploymentState::kReady);
  health_status = 500;
  h.Deploy(doc);
  EXPECT_EQ(h.controller->Deployment("r.f")->state, DeploymentState::kFailed);
  EXPECT_FALSE(h.routes->Find("r.f"));
  server.stop();
  t.join();
}

TEST(ProvisionerTest, CrashBetweenDequeueAndAckStillDeploys) {
  Harness h;
  h.controller->RegisterPackageText(kTextPackage);
  auto lost = h.queue->Dequeue();  // provisioner dies holding this
  ASSERT_TRUE(lost);
  EXPECT_FALSE(h.provisioner->RunOnce());
  h.clock->Advance(10'001);
  EXPECT_TRUE(h.provisioner->RunOnce());
  EXPECT_EQ(h.controller->Deployment("example.concat")->state, DeploymentState::kReady);
  // Duplicate provisioning is harmless.
  h.provisioner->Provision(lost->request);
  EXPECT_EQ(h.routes->size(), 1u);
  EXPECT_EQ(h.queue->Pending(), 0u);
}

TEST(ProvisionerTest, RestoredStoreIsRedeployed) {
  Harness before;
  before.Deploy(kTextPackage);
  Harness after;
  after.store->LoadSnapshotText(before.store->SnapshotText());
  EXPECT_EQ(after.controller->RedeployAll().size(), 1u);
  after.provisioner->Drain();
  EXPECT_EQ(after.controller->Deployment("example.concat")->state, DeploymentState::kReady);
  EXPECT_TRUE(after.routes->Find("example.concat"));
}

TEST(DeploymentTableTest, TransitionsFollowStateMachine) {
  DeploymentTable t;
  t.MarkPending("f");
  EXPECT_THROW(t.Transition("f", DeploymentState::kReady), Error);
  t.Transition("f", DeploymentState::kDeploying);
  t.Transition("f", DeploymentState::kReady);
  EXPECT_THROW(t.Transition("f", DeploymentState::kFailed), Error);
  t.Transition("f", DeploymentState::kDeploying);
  t.Transition("f", DeploymentState::kFailed, "x");
  EXPECT_EQ(t.Find("f")->detail, "x");
  t.MarkPending("f");
  EXPECT_EQ(t.Find("f")->state, DeploymentState::kFailed);
}

TEST(InstantiateObject, UploadHandshake) {
  Harness h;
  h.Deploy(kTextPackage);
  auto res = h.controller->InstantiateObject("example.test1", nullptr, {"str"});
  EXPECT_EQ(res.record.status, kv::ObjectStatus::kPending);
  ASSERT_EQ(res.upload_urls.size(), 1u);
  EXPECT_EQ(res.record.class_version, 1u);

  try {
    h.controller->ConfirmUpload(res.record.id);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingBlob);
    EXPECT_EQ(e.details()["missing"], json::array({"str"}));
  }
  h.client->Put(res.upload_urls.at("str"), "hello");
  EXPECT_EQ(h.controller->ConfirmUpload(res.record.id).status, kv::ObjectStatus::kCompleted);
  const uint64_t writes = h.store->writes();
  EXPECT_EQ(h.controller->ConfirmUpload(res.record.id).status, kv::ObjectStatus::kCompleted);
  EXPECT_EQ(h.store->writes(), writes);
}

TEST(InstantiateObject, StructuredOnlyIsCompletedImmediately) {
  Harness h;
  h.Deploy(ReadFile(OAAS_PACKAGES_DIR "/records.yaml"));
  auto res = h.controller->InstantiateObject("records.record", {{"pairs", json::object()}}, {});
  EXPECT_EQ(res.record.status, kv::ObjectStatus::kCompleted);
  EXPECT_TRUE(res.upload_urls.empty());
}

TEST(InstantiateObject, Errors) {
  Harness h;
  h.Deploy(kTextPackage);
  EXPECT_EQ(CodeOf([&] { h.controller->InstantiateObject("example.nope", nullptr, {}); }),
            ErrorCode::kUnknownClass);
  EXPECT_EQ(CodeOf([&] { h.controller->InstantiateObject("example.test1", nullptr, {"bad"}); }),
            ErrorCode::kUnknownStateKey);
  EXPECT_EQ(CodeOf([&] {
              h.controller->InstantiateObject("example.test1", {{"x", 1}}, {});
            }),
            ErrorCode::kUnknownStateKey);
  h.controller->InstantiateObject("example.test1", nullptr, {}, "fixed");
  EXPECT_EQ(CodeOf([&] { h.controller->InstantiateObject("example.test1", nullptr, {}, "fixed"); }),
            ErrorCode::kVersionConflict);
  EXPECT_EQ(CodeOf([&] { h.controller->ConfirmUpload("ghost"); }), ErrorCode::kUnknownObject);
}

TEST(RegisterPackage, ConcurrentRegistrationsAllLand) {
  Harness h;
  std::vector<std::thread> threads;
  for (int i = 0; i < 8; ++i) {
    threads.emplace_back([&, i] {
      h.controller->RegisterPackageText("name: p" + std::to_string(i) +
                                        "\nclasses:\n  - {name: c}\n");
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(h.store->ListKeys(kv::RecordKind::kClass).size(), 8u);
}

}  // namespace
}  // namespace oaas::control
