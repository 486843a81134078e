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

#include "oaas/control/provision_queue.h"

#include "oaas/common/error.h"

namespace oaas::control {

using nlohmann::json;

std::string_view ToString(ProvisionAction a) {
  return a == ProvisionAction::kDeploy ? "deploy" : "update";
}

json ProvisionRequest::ToJson() const {
  return {{"functionName", function_name},
          {"specVersion", spec_version},
          {"action", ToString(action)}};
}

ProvisionRequest ProvisionRequest::FromJson(const json& j) {
  ProvisionRequest r;
  r.function_name = j.at("functionName").get<std::string>();
  r.spec_version = j.at("specVersion").get<uint64_t>();
  r.action = j.at("action") == "update" ? ProvisionAction::kUpdate
                                        : ProvisionAction::kDeploy;
  return r;
}

ProvisionQueue::ProvisionQueue(std::optional<std::filesystem::path> journal,
                               int64_t visibility_millis,
                               std::shared_ptr<Clock> clock)
    : journal_(std::move(journal)),
      visibility_millis_(visibility_millis),
      clock_(std::move(clock)) {
  if (!journal_) return;
  if (std::ifstream in(*journal_); in) {
    std::string line;
    while (std::getline(in, line)) {
      // A torn final line from a crash mid-append is skipped.
      auto j = json::parse(line, nullptr, false);
      if (!j.is_object() || !j.contains("op")) continue;
      const uint64_t receipt = j.value("receipt", uint64_t{0});
      if (j["op"] == "enqueue") {
        entries_[receipt] = Entry{ProvisionRequest::FromJson(j.at("request")), 0};
      } else if (j["op"] == "ack") {
        entries_.erase(receipt);
      }
      next_receipt_ = std::max(next_receipt_, receipt + 1);
    }
  }
  out_.open(*journal_, std::ios::app);
  if (!out_) throw Error(ErrorCode::kIo, "cannot open queue journal " + journal_->string());
}

void ProvisionQueue::Append(const json& line) {
  if (!out_.is_open()) return;
  out_ << line.dump() << '\n';
  out_.flush();
}

void ProvisionQueue::Enqueue(const ProvisionRequest& req) {
  std::lock_guard lock(mu_);
  const uint64_t receipt = next_receipt_++;
  Append({{"op", "enqueue"}, {"receipt", receipt}, {"request", req.ToJson()}});
  entries_[receipt] = Entry{req, 0};
}

std::optional<QueueDelivery> ProvisionQueue::Dequeue() {
  std::lock_guard lock(mu_);
  const int64_t now = clock_->NowMillis();
  for (auto& [receipt, entry] : entries_) {
    if (entry.invisible_until > now) continue;
    entry.invisible_until = now + visibility_millis_;
    return QueueDelivery{receipt, entry.request};
  }
  return std::nullopt;
}

void ProvisionQueue::Ack(uint64_t receipt) {
  std::lock_guard lock(mu_);
  if (entries_.erase(receipt) == 0) return;
  Append({{"op", "ack"}, {"receipt", receipt}});
}

size_t ProvisionQueue::Pending() const {
  std::lock_guard lock(mu_);
  return entries_.size();
}

}  // namespace oaas::control
