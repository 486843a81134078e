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

#ifndef OAAS_INVOKE_TASK_MANAGER_H_
#define OAAS_INVOKE_TASK_MANAGER_H_

#include <condition_variable>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "oaas/blob/storage_adapter.h"
#include "oaas/common/clock.h"
#include "oaas/control/store_registry.h"
#include "oaas/exec/task.h"
#include "oaas/invoke/graph.h"
#include "oaas/kv/metadata_store.h"
#include "oaas/kv/object_record.h"
#include "oaas/kv/spec_cache.h"
#include "oaas/model/oai.h"
#include "oaas/model/resolve.h"

namespace oaas::invoke {

/// Hands a task to the execution plane. Must not block on the task.
using TaskDispatcher = std::function<void(const exec::TaskEnvelope&)>;

enum class InvokeMode { kSync, kAsync };

struct InvokeResult {
  kv::ObjectRecord record;
  // Set for a sync request with a content key on a COMPLETED object.
  std::optional<blob::StateResolution> content;
};

/// Turns OAI requests into tasks and invocation graphs, and folds task
/// completions back into object and graph records. Keeps no coordination
/// state of its own: any instance can continue a graph another started.
class TaskManager {
 public:
  struct Options {
    std::string instance_id = "tm-0";
    int64_t sync_timeout_millis = 120'000;
    int64_t poll_millis = 50;
    int64_t url_ttl_seconds = 120;
    int max_attempts = 2;
    blob::DeliveryMode delivery_mode = blob::DeliveryMode::kRedirect;
    std::function<std::string()> id_generator;  // defaults to UUIDv4
  };

  TaskManager(Options options, std::shared_ptr<kv::MetadataStore> store,
              std::shared_ptr<kv::SpecCache> specs,
              std::shared_ptr<blob::StorageAdapter> storage,
              TaskDispatcher dispatcher,
              std::shared_ptr<Clock> clock = DefaultClock());

  /// `caller_package` is empty for end users; otherwise the package whose
  /// code is calling, which unlocks internal bindings of that package.
  InvokeResult Invoke(const model::OaiRequest& req, InvokeMode mode,
                      const std::string& caller_package = "");

  /// Creates the PENDING output object and the task for it.
  exec::Task GenerateTask(const kv::ObjectRecord& main,
                          const std::vector<kv::ObjectRecord>& inputs,
                          const std::string& binding,
                          const std::map<std::string, std::string>& args,
                          const std::string& caller_package = "");

  /// Idempotent; always acknowledges. Returns the tasks it dispatched.
  std::vector<exec::Task> OnCompletion(const exec::TaskCompletion& completion);

  /// Brings a graph's node statuses up to date with its objects, skips the
  /// descendants of failed nodes and dispatches every node that is ready.
  std::vector<exec::Task> ReconcileGraph(const std::string& graph_id);

  /// Status view: the record plus "availableContentKeys".
  nlohmann::json GetStatus(const std::string& object_id) const;

  std::optional<InvocationGraph> LoadGraph(const std::string& graph_id) const;

  /// Blocks until the object is terminal. Throws Error(kTimeout).
  kv::ObjectRecord WaitTerminal(const std::string& object_id, int64_t timeout_millis);

  const Options& options() const { return options_; }
  blob::StorageAdapter& storage() const { return *storage_; }

 private:
  struct Target {
    kv::ObjectRecord main;
    std::vector<kv::ObjectRecord> inputs;
  };
  kv::ObjectRecord LoadCompleted(const std::string& id) const;
  model::ResolvedBinding ResolveBinding(const std::string& class_name,
                                        const std::string& binding,
                                        const std::string& caller_package) const;
  kv::ObjectRecord NewOutputObject(const std::string& output_class,
                                   kv::ObjectOrigin origin);
  exec::Task BuildTask(const kv::ObjectRecord& output, const std::string& function,
                       int attempt) const;
  void Send(const exec::Task& task);
  void MarkRunning(const std::string& object_id);
  kv::ObjectRecord InvokeMacro(const model::FunctionSpec& macro,
                               const std::string& macro_name, const Target& target,
                               const std::map<std::string, std::string>& args,
                               const model::ResolvedBinding& binding);
  void FailObject(const std::string& object_id, const std::string& cause);
  std::string NextId();
  void Notify();

  Options options_;
  std::shared_ptr<kv::MetadataStore> store_;
  std::shared_ptr<kv::SpecCache> specs_;
  control::StoreRegistry registry_;
  std::shared_ptr<blob::StorageAdapter> storage_;
  TaskDispatcher dispatcher_;
  std::shared_ptr<Clock> clock_;

  std::mutex wait_mu_;
  std::condition_variable wait_cv_;

  // Task ids this instance already sent; suppresses local double sends
  // while a node is READY in the record but already dispatched.
  std::mutex sent_mu_;
  std::set<std::string> sent_;
};

}  // namespace oaas::invoke

#endif  // OAAS_INVOKE_TASK_MANAGER_H_
