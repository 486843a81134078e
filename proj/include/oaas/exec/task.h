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

#ifndef OAAS_EXEC_TASK_H_
#define OAAS_EXEC_TASK_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace oaas::exec {

/// An object as seen by a function: a structured-state snapshot plus one
/// presigned URL per unstructured key.
struct TaskObject {
  std::string id;
  nlohmann::json structured_state = nlohmann::json::object();
  std::map<std::string, std::string> urls;

  bool operator==(const TaskObject&) const = default;
};

struct Task {
  std::string task_id;        // outputObjectId ":" attempt
  std::string function;       // qualified function name
  TaskObject main_object;
  std::vector<TaskObject> inputs;
  TaskObject output_object;   // urls are PUT URLs; no structured state
  std::map<std::string, std::string> args;
  int64_t issued_at = 0;

  nlohmann::json ToJson() const;
  static Task FromJson(const nlohmann::json& j);
  bool operator==(const Task&) const = default;
};

struct TaskCompletion {
  std::string task_id;
  std::string output_object_id;
  bool success = false;
  std::optional<nlohmann::json> structured_output;
  std::optional<std::string> error_detail;
  int64_t completed_at = 0;
  // The function never ran to a verdict (connection refused, reset).
  // Eligible for a retry, unlike a function-reported failure.
  bool transport_error = false;

  nlohmann::json ToJson() const;
  static TaskCompletion FromJson(const nlohmann::json& j);
  bool operator==(const TaskCompletion&) const = default;

  static TaskCompletion Success(const Task& task,
                                std::optional<nlohmann::json> output);
  static TaskCompletion Failure(const Task& task, std::string detail,
                                bool transport_error = false);
};

inline constexpr std::string_view kTaskEventType = "oaas.task";

struct TaskEnvelope {
  std::string id;
  std::string type{kTaskEventType};
  std::string source;
  Task data;

  nlohmann::json ToJson() const;
  static TaskEnvelope FromJson(const nlohmann::json& j);
};

std::string MakeTaskId(std::string_view output_object_id, int attempt);

/// Splits "outputId:attempt". Throws Error(kInvalidArgument).
std::pair<std::string, int> ParseTaskId(std::string_view task_id);

}  // namespace oaas::exec

#endif  // OAAS_EXEC_TASK_H_
