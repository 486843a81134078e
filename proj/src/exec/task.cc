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

#include "oaas/exec/task.h"

#include <charconv>

#include "oaas/common/clock.h"
#include "oaas/common/error.h"

namespace oaas::exec {

using nlohmann::json;

namespace {

json ObjectToJson(const TaskObject& o, bool with_state) {
  json j = {{"id", o.id}, {"urls", o.urls}};
  if (with_state) j["structuredState"] = o.structured_state;
  return j;
}

TaskObject ObjectFromJson(const json& j) {
  TaskObject o;
  o.id = j.at("id").get<std::string>();
  o.urls = j.value("urls", std::map<std::string, std::string>{});
  o.structured_state = j.value("structuredState", json::object());
  return o;
}

}  // namespace

json Task::ToJson() const {
  json in = json::array();
  for (const auto& i : inputs) in.push_back(ObjectToJson(i, true));
  return {{"taskId", task_id},
          {"function", function},
          {"mainObject", ObjectToJson(main_object, true)},
          {"inputs", std::move(in)},
          {"outputObject", ObjectToJson(output_object, false)},
          {"args", args},
          {"issuedAt", issued_at}};
}

Task Task::FromJson(const json& j) {
  try {
    Task t;
    t.task_id = j.at("taskId").get<std::string>();
    t.function = j.at("function").get<std::string>();
    t.main_object = ObjectFromJson(j.at("mainObject"));
    for (const auto& i : j.value("inputs", json::array())) {
      t.inputs.push_back(ObjectFromJson(i));
    }
    t.output_object = ObjectFromJson(j.at("outputObject"));
    t.args = j.value("args", std::map<std::string, std::string>{});
    t.issued_at = j.value("issuedAt", int64_t{0});
    return t;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("malformed task: ") + e.what());
  }
}

json TaskCompletion::ToJson() const {
  json j = {{"taskId", task_id},
            {"outputObjectId", output_object_id},
            {"success", success},
            {"completedAt", completed_at}};
  if (structured_output) j["structuredOutput"] = *structured_output;
  if (error_detail) j["errorDetail"] = *error_detail;
  if (transport_error) j["transportError"] = true;
  return j;
}

TaskCompletion TaskCompletion::FromJson(const json& j) {
  try {
    TaskCompletion c;
    c.task_id = j.at("taskId").get<std::string>();
    c.output_object_id = j.at("outputObjectId").get<std::string>();
    c.success = j.at("success").get<bool>();
    if (j.contains("structuredOutput")) c.structured_output = j["structuredOutput"];
    if (j.contains("errorDetail")) c.error_detail = j["errorDetail"].get<std::string>();
    c.completed_at = j.value("completedAt", int64_t{0});
    c.transport_error = j.value("transportError", false);
    if (!c.success && !c.error_detail) c.error_detail = "unspecified failure";
    return c;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("malformed completion: ") + e.what());
  }
}

TaskCompletion TaskCompletion::Success(const Task& task,
                                       std::optional<json> output) {
  TaskCompletion c;
  c.task_id = task.task_id;
  c.output_object_id = task.output_object.id;
  c.success = true;
  c.structured_output = std::move(output);
  c.completed_at = DefaultClock()->NowMillis();
  return c;
}

TaskCompletion TaskCompletion::Failure(const Task& task, std::string detail,
                                       bool transport_error) {
  TaskCompletion c;
  c.task_id = task.task_id;
  c.output_object_id = task.output_object.id;
  c.success = false;
  c.error_detail = std::move(detail);
  c.transport_error = transport_error;
  c.completed_at = DefaultClock()->NowMillis();
  return c;
}

json TaskEnvelope::ToJson() const {
  return {{"id", id}, {"type", type}, {"source", source}, {"data", data.ToJson()}};
}

TaskEnvelope TaskEnvelope::FromJson(const json& j) {
  TaskEnvelope e;
  e.id = j.value("id", "");
  e.type = j.value("type", "");
  e.source = j.value("source", "");
  if (!j.contains("data")) throw Error(ErrorCode::kInvalidArgument, "envelope has no data");
  e.data = Task::FromJson(j["data"]);
  return e;
}

std::string MakeTaskId(std::string_view output_object_id, int attempt) {
  return std::string(output_object_id) + ":" + std::to_string(attempt);
}

std::pair<std::string, int> ParseTaskId(std::string_view task_id) {
  const auto colon = task_id.rfind(':');
  int attempt = 0;
  if (colon != std::string_view::npos) {
    const auto tail = task_id.substr(colon + 1);
    auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), attempt);
    if (ec == std::errc() && ptr == tail.data() + tail.size() && attempt >= 1) {
      return {std::string(task_id.substr(0, colon)), attempt};
    }
  }
  throw Error(ErrorCode::kInvalidArgument, "malformed task id '" + std::string(task_id) + "'");
}

}  // namespace oaas::exec
