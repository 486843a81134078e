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

#include "oaas/platform/platform.h"

#include <filesystem>

#include <httplib.h>

#include "oaas/blob/blob_http.h"
#include "oaas/common/error.h"
#include "oaas/common/ids.h"
#include "oaas/exec/remote.h"
#include "oaas/gateway/routes.h"

namespace oaas::platform {
namespace {

// Sync invocations park a server thread each, so listeners need far more
// threads than cores.
constexpr size_t kServerThreads = 256;

std::unique_ptr<httplib::Server> NewServer() {
  auto s = std::make_unique<httplib::Server>();
  s->new_task_queue = [] { return new httplib::ThreadPool(kServerThreads); };
  s->set_read_timeout(300);
  s->set_write_timeout(300);
  return s;
}

}  // namespace

Platform::Platform(Config config) : config_(std::move(config)), clock_(DefaultClock()) {
  store_ = std::make_shared<kv::MetadataStore>();
  if (!config_.snapshot_path.empty() && std::filesystem::exists(config_.snapshot_path)) {
    store_->SnapshotLoad(config_.snapshot_path);
  }
  const std::string secret = config_.hmac_secret_path.empty()
                                 ? NewUuid() + NewUuid()
                                 : blob::LoadSecret(config_.hmac_secret_path);
  signer_ = std::make_shared<blob::UrlSigner>(secret);
  blobs_ = std::make_shared<blob::BlobStore>(config_.blob_root, signer_, clock_);

  const auto [host, port] = ParseListenAddr(config_.listen_addr);
  server_ = NewServer();
  int bound = -1;
  if (port == 0) {
    bound = server_->bind_to_any_port(host);
  } else if (server_->bind_to_port(host, port)) {
    bound = port;
  }
  if (bound < 0) throw Error(ErrorCode::kUnavailable, "cannot bind " + config_.listen_addr);
  url_ = "http://" + host + ":" + std::to_string(bound);

  storage_ = std::make_shared<blob::StorageAdapter>(store_, blobs_, url_,
                                                    std::make_shared<blob::HttpBlobClient>());
  const std::optional<std::filesystem::path> journal =
      config_.snapshot_path.empty()
          ? std::nullopt
          : std::optional<std::filesystem::path>(config_.snapshot_path + ".queue");
  queue_ = std::make_shared<control::ProvisionQueue>(journal, 10'000, clock_);
  deployments_ = std::make_shared<control::DeploymentTable>(clock_);
  routes_ = std::make_shared<exec::RoutingTable>();
  const kv::SpecCache::Options cache_opts{config_.metadata_cache, 5000};
  controller_ = std::make_shared<control::ObjectController>(
      store_, std::make_shared<kv::SpecCache>(store_, cache_opts, clock_), storage_, queue_,
      deployments_, control::ObjectController::Options{}, clock_);
  controller_->RedeployAll();

  auto builtins = exec::BuiltinRegistry::Default();
  provisioner_ = std::make_unique<control::Provisioner>(
      queue_, store_, deployments_, routes_,
      [builtins](std::string_view n) { return builtins.Has(n); },
      [](const std::string& e, std::string* d) { return exec::ProbeHealth(e, d); });

  exec::Executor::Options exec_opts;
  exec_opts.workers = config_.worker_pool_size;
  exec_opts.deadline_millis = config_.sync_timeout_secs * 1000;
  executor_ = std::make_unique<exec::Executor>(
      exec_opts, routes_, builtins, std::make_shared<blob::LocalBlobClient>(blobs_),
      [this](const exec::TaskCompletion& c) {
        // Any instance can take any completion.
        const size_t i = sink_counter_.fetch_add(1) % instances_.size();
        instances_[i]->tm->OnCompletion(c);
      });

  std::vector<std::string> urls;
  for (size_t i = 0; i < config_.task_manager_instances; ++i) {
    invoke::TaskManager::Options o;
    o.instance_id = "tm-" + std::to_string(i);
    o.sync_timeout_millis = config_.sync_timeout_secs * 1000;
    o.delivery_mode = config_.state_delivery_mode;
    auto inst = std::make_unique<Instance>();
    inst->tm = std::make_shared<invoke::TaskManager>(
        o, store_, std::make_shared<kv::SpecCache>(store_, cache_opts, clock_), storage_,
        [this](const exec::TaskEnvelope& env) { executor_->Dispatch(env); }, clock_);
    inst->server = NewServer();
    gateway::MountTaskManagerRoutes(*inst->server, inst->tm);
    inst->port = inst->server->bind_to_any_port("127.0.0.1");
    if (inst->port < 0) throw Error(ErrorCode::kUnavailable, "cannot bind task manager");
    urls.push_back("http://127.0.0.1:" + std::to_string(inst->port));
    instances_.push_back(std::move(inst));
  }

  gateway::Gateway::Options gw_opts;
  gw_opts.cache_capacity_bytes = config_.cache_capacity_bytes;
  gw_opts.upstream_timeout_seconds = static_cast<int>(config_.sync_timeout_secs) + 30;
  gateway_ = std::make_unique<gateway::Gateway>(gw_opts, urls, controller_, clock_);
  gateway_->Mount(*server_);
  blob::MountBlobRoutes(*server_, blobs_);
  server_->Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
    res.set_content("ok", "text/plain");
  });
}

Platform::~Platform() { Stop(); }

void Platform::Listen(Instance& inst) {
  auto* server = inst.server.get();
  inst.thread = std::thread([server] { server->listen_after_bind(); });
  server->wait_until_ready();
}

void Platform::Start() {
  if (started_) return;
  started_ = true;
  provisioner_->Start();
  for (auto& inst : instances_) Listen(*inst);
  auto* server = server_.get();
  server_thread_ = std::thread([server] { server->listen_after_bind(); });
  server->wait_until_ready();
}

void Platform::StopInstance(size_t index) {
  auto& inst = *instances_.at(index);
  if (!inst.thread.joinable()) return;
  inst.server->stop();
  inst.thread.join();
}

void Platform::StartInstance(size_t index) {
  auto& inst = *instances_.at(index);
  if (inst.thread.joinable()) return;
  inst.server = NewServer();
  gateway::MountTaskManagerRoutes(*inst.server, inst.tm);
  if (!inst.server->bind_to_port("127.0.0.1", inst.port)) {
    throw Error(ErrorCode::kUnavailable, "cannot rebind task manager");
  }
  Listen(inst);
}

void Platform::Stop() {
  if (stopped_) return;
  stopped_ = true;
  if (server_thread_.joinable()) {
    server_->stop();
    server_thread_.join();
  }
  for (size_t i = 0; i < instances_.size(); ++i) StopInstance(i);
  provisioner_->Stop();
  executor_->Stop();
  if (!config_.snapshot_path.empty()) store_->SnapshotSave(config_.snapshot_path);
}

}  // namespace oaas::platform
