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

#include "oaas/exec/executor.h"

#include <boost/asio/post.hpp>

#include "oaas/common/clock.h"
#include "oaas/common/error.h"
#include "oaas/exec/remote.h"

namespace oaas::exec {

Executor::Executor(Options options, std::shared_ptr<RoutingTable> routes,
                   BuiltinRegistry builtins,
                   std::shared_ptr<blob::BlobClient> blobs, CompletionSink sink)
    : options_(options),
      routes_(std::move(routes)),
      builtins_(std::move(builtins)),
      blobs_(std::move(blobs)),
      sink_(std::move(sink)),
      pool_(std::max<size_t>(1, options.workers)) {
  watchdog_ = std::thread([this] { WatchdogLoop(); });
}

Executor::~Executor() { Stop(); }

void Executor::Stop() {
  {
    std::lock_guard lock(mu_);
    if (stopping_) return;
    stopping_ = true;
  }
  stopped_ = true;
  cv_.notify_all();
  watchdog_.join();
  pool_.join();
}

void Executor::SetSink(CompletionSink sink) {
  std::lock_guard lock(sink_mu_);
  sink_ = std::move(sink);
}

size_t Executor::in_flight() const {
  std::lock_guard lock(mu_);
  return pending_.size();
}

void Executor::Dispatch(TaskEnvelope envelope) {
  uint64_t seq = 0;
  {
    std::lock_guard lock(mu_);
    if (stopping_) return;
    seq = next_seq_++;
    pending_[seq] = Pending{envelope.data,
                            DefaultClock()->NowMillis() + options_.deadline_millis};
  }
  ++dispatched_;
  cv_.notify_all();
  boost::asio::post(pool_, [this, seq, env = std::move(envelope)] {
    Finish(seq, Execute(env));
  });
}

TaskCompletion Executor::Execute(const TaskEnvelope& envelope) {
  const Task& task = envelope.data;
  const auto route = routes_->Find(task.function);
  if (!route) return TaskCompletion::Failure(task, "no route");
  if (route->binding.mode == model::ExecutorMode::kRemoteHttp) {
    return RemoteHttpExecute(envelope, route->binding.target,
                             options_.remote_timeout_seconds);
  }
  const BuiltinFn* fn = builtins_.Find(route->binding.target);
  if (!fn) return TaskCompletion::Failure(task, "no route");
  try {
    return (*fn)(task, *blobs_);
  } catch (const std::exception& e) {
    return TaskCompletion::Failure(task, e.what());
  }
}

void Executor::Finish(uint64_t seq, TaskCompletion completion) {
  {
    std::lock_guard lock(mu_);
    // Already answered by the watchdog; a late result is dropped.
    if (pending_.erase(seq) == 0) return;
  }
  Deliver(completion);
}

void Executor::Deliver(const TaskCompletion& completion) {
  while (!stopped_) {
    CompletionSink sink;
    {
      std::lock_guard lock(sink_mu_);
      sink = sink_;
    }
    try {
      if (sink) {
        sink(completion);
        ++delivered_;
        return;
      }
    } catch (const std::exception&) {
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(options_.redelivery_millis));
  }
}

void Executor::WatchdogLoop() {
  std::unique_lock lock(mu_);
  while (!stopping_) {
    const int64_t now = DefaultClock()->NowMillis();
    std::vector<TaskCompletion> expired;
    int64_t next = now + 1000;
    for (auto it = pending_.begin(); it != pending_.end();) {
      if (it->second.deadline <= now) {
        expired.push_back(TaskCompletion::Failure(
            it->second.task,
            "timeout after " + std::to_string(options_.deadline_millis) + " ms"));
        it = pending_.erase(it);
      } else {
        next = std::min(next, it->second.deadline);
        ++it;
      }
    }
    if (!expired.empty()) {
      lock.unlock();
      for (const auto& c : expired) {
        boost::asio::post(pool_, [this, c] { Deliver(c); });
      }
      lock.lock();
      continue;
    }
    cv_.wait_for(lock, std::chrono::milliseconds(std::max<int64_t>(1, next - now)));
  }
}

}  // namespace oaas::exec
