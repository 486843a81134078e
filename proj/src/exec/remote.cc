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

#include "oaas/exec/remote.h"

#include <httplib.h>

#include "oaas/blob/blob_client.h"
#include "oaas/common/error.h"

namespace oaas::exec {
namespace {

std::string JoinPath(const std::string& base, std::string_view leaf) {
  if (!base.empty() && base.back() == '/') return base + std::string(leaf);
  return base + "/" + std::string(leaf);
}

}  // namespace

TaskCompletion RemoteHttpExecute(const TaskEnvelope& envelope,
                                 const std::string& endpoint,
                                 int timeout_seconds) {
  const Task& task = envelope.data;
  std::pair<std::string, std::string> parts;
  try {
    parts = blob::SplitUrl(endpoint);
  } catch (const Error& e) {
    return TaskCompletion::Failure(task, e.what());
  }
  httplib::Client cli(parts.first);
  cli.set_connection_timeout(timeout_seconds);
  cli.set_read_timeout(timeout_seconds);
  cli.set_write_timeout(timeout_seconds);
  auto res = cli.Post(parts.second, envelope.ToJson().dump(), "application/json");
  if (!res) {
    return TaskCompletion::Failure(
        task, "transport error: " + httplib::to_string(res.error()), true);
  }
  if (res->status < 200 || res->status > 299) {
    return TaskCompletion::Failure(task, "status " + std::to_string(res->status));
  }
  std::optional<nlohmann::json> output;
  if (!res->body.empty()) {
    auto body = nlohmann::json::parse(res->body, nullptr, false);
    if (body.is_object() && body.contains("structuredOutput")) {
      output = body["structuredOutput"];
    }
  }
  return TaskCompletion::Success(task, std::move(output));
}

bool ProbeHealth(const std::string& endpoint, std::string* detail,
                 int timeout_seconds) {
  try {
    const auto [base, path] = blob::SplitUrl(endpoint);
    httplib::Client cli(base);
    cli.set_connection_timeout(timeout_seconds);
    cli.set_read_timeout(timeout_seconds);
    auto res = cli.Get(JoinPath(path, "healthz"));
    if (!res) {
      if (detail) *detail = "health probe failed: " + httplib::to_string(res.error());
      return false;
    }
    if (res->status < 200 || res->status > 299) {
      if (detail) *detail = "health probe returned status " + std::to_string(res->status);
      return false;
    }
    return true;
  } catch (const Error& e) {
    if (detail) *detail = e.what();
    return false;
  }
}

}  // namespace oaas::exec
