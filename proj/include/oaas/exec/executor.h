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

#ifndef OAAS_EXEC_EXECUTOR_H_
#define OAAS_EXEC_EXECUTOR_H_

#include <atomic>
#include <condition_variable>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <thread>

#include <boost/asio/thread_pool.hpp>

#include "oaas/blob/blob_client.h"
#include "oaas/exec/builtins.h"
#include "oaas/exec/routing_table.h"
#include "oaas/exec/task.h"

namespace oaas::exec {

/// Receives completions. Returning normally acknowledges; throwing leaves
/// the completion unacknowledged and it is delivered again.
using CompletionSink = std::function<void(const TaskCompletion&)>;

/// Routes tasks to builtins or remote endpoints and guarantees one
/// acknowledged completion per dispatch: the function's own result or a
/// synthesized failure (no route, deadline).
class Executor {
 public:
  struct Options {
    size_t workers = std::max(1u, std::thread::hardware_concurrency());
    int64_t deadline_millis = 60'000;
    int64_t redelivery_millis = 20;
    int remote_timeout_seconds = 30;
  };

  Executor(Options options, std::shared_ptr<RoutingTable> routes,
           BuiltinRegistry builtins, std::shared_ptr<blob::BlobClient> blobs,
           CompletionSink sink);
  ~Executor();

  Executor(const Executor&) = delete;
  Executor& operator=(const Executor&) = delete;

  void Dispatch(TaskEnvelope envelope);

  /// Stops the watchdog and waits for running work. Pending redeliveries
  /// are abandoned.
  void Stop();

  /// Replaces the sink, e.g. to point at a restarted task manager.
  void SetSink(CompletionSink sink);

  size_t in_flight() const;
  uint64_t dispatched() const { return dispatched_.load(); }
  uint64_t delivered() const { return delivered_.load(); }
  const RoutingTable& routes() const { return *routes_; }
  const BuiltinRegistry& builtins() const { return builtins_; }

 private:
  TaskCompletion Execute(const TaskEnvelope& envelope);
  void Finish(uint64_t seq, TaskCompletion completion);
  void Deliver(const TaskCompletion& completion);
  void WatchdogLoop();

  Options options_;
  std::shared_ptr<RoutingTable> routes_;
  BuiltinRegistry builtins_;
  std::shared_ptr<blob::BlobClient> blobs_;

  mutable std::mutex sink_mu_;
  CompletionSink sink_;

  struct Pending {
    Task task;
    int64_t deadline = 0;
  };
  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::map<uint64_t, Pending> pending_;
  uint64_t next_seq_ = 0;
  bool stopping_ = false;

  std::atomic<uint64_t> dispatched_{0};
  std::atomic<uint64_t> delivered_{0};
  std::atomic<bool> stopped_{false};
  boost::asio::thread_pool pool_;
  std::thread watchdog_;
};

}  // namespace oaas::exec

#endif  // OAAS_EXEC_EXECUTOR_H_
