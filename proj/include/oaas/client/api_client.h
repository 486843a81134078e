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

#ifndef OAAS_CLIENT_API_CLIENT_H_
#define OAAS_CLIENT_API_CLIENT_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace oaas::client {

/// Outcome of a sync OAI request.
struct OaiResponse {
  int status = 0;
  std::string object_id;             // set for content responses
  std::optional<std::string> content;
  nlohmann::json record;             // set for record responses
  bool failed() const { return status == 502; }
};

/// HTTP client for the gateway. Platform errors are rethrown as
/// oaas::Error with the code the server reported; an unreachable server
/// is Error(kUnavailable).
class ApiClient {
 public:
  explicit ApiClient(std::string base_url, int timeout_seconds = 300);

  nlohmann::json Deploy(const std::string& document);
  nlohmann::json Deployment(const std::string& function);
  /// Polls until every task function named in `registration` is ready or
  /// failed; returns the failures' statuses.
  std::vector<nlohmann::json> AwaitDeployments(const nlohmann::json& registration,
                                               int timeout_millis = 30'000);

  /// Instantiates, uploads every blob through its presigned URL and
  /// confirms. Returns the final record.
  nlohmann::json CreateObject(const std::string& class_name,
                              const std::optional<std::string>& id,
                              const nlohmann::json& structured_state,
                              const std::map<std::string, std::string>& uploads);

  /// GET /oal/{expr}. With `follow_redirects` the client sends the pass
  /// header and fetches 303 targets itself.
  OaiResponse Invoke(const std::string& expr, bool follow_redirects = false);
  nlohmann::json InvokeAsync(const std::string& expr,
                             const std::vector<std::string>& inputs = {});
  nlohmann::json Status(const std::string& object_id);

  const std::string& base_url() const { return base_url_; }

 private:
  std::string base_url_;
  int timeout_seconds_;
};

}  // namespace oaas::client

#endif  // OAAS_CLIENT_API_CLIENT_H_
