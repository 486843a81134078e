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

#include "oaas/platform/config.h"

#include <fstream>
#include <set>
#include <sstream>

#include "oaas/common/error.h"

namespace oaas::platform {

using nlohmann::json;

namespace {

bool OnOff(const json& v, const char* field) {
  if (v.is_boolean()) return v.get<bool>();
  const auto s = v.get<std::string>();
  if (s == "on") return true;
  if (s == "off") return false;
  throw Error(ErrorCode::kInvalidArgument, std::string(field) + " must be on or off");
}

}  // namespace

Config Config::FromJson(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kInvalidArgument, "config must be a JSON object");
  static const std::set<std::string> kKnown = {
      "listenAddr",         "blobRoot",        "snapshotPath",      "hmacSecretPath",
      "syncTimeoutSecs",    "cacheCapacityBytes", "workerPoolSize", "stateDeliveryMode",
      "metadataCache",      "taskManagerInstances"};
  for (const auto& [k, _] : j.items()) {
    if (!kKnown.contains(k)) throw Error(ErrorCode::kInvalidArgument, "unknown config field " + k);
  }
  Config c;
  try {
    c.listen_addr = j.value("listenAddr", c.listen_addr);
    c.blob_root = j.value("blobRoot", c.blob_root);
    c.snapshot_path = j.value("snapshotPath", c.snapshot_path);
    c.hmac_secret_path = j.value("hmacSecretPath", c.hmac_secret_path);
    c.sync_timeout_secs = j.value("syncTimeoutSecs", c.sync_timeout_secs);
    c.cache_capacity_bytes = j.value("cacheCapacityBytes", c.cache_capacity_bytes);
    c.worker_pool_size = j.value("workerPoolSize", c.worker_pool_size);
    c.task_manager_instances = j.value("taskManagerInstances", c.task_manager_instances);
    if (j.contains("stateDeliveryMode")) {
      c.state_delivery_mode =
          blob::DeliveryModeFromString(j.at("stateDeliveryMode").get<std::string>());
    }
    if (j.contains("metadataCache")) c.metadata_cache = OnOff(j.at("metadataCache"), "metadataCache");
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("bad config: ") + e.what());
  }
  if (c.sync_timeout_secs <= 0 || c.worker_pool_size == 0 || c.task_manager_instances == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "syncTimeoutSecs, workerPoolSize and taskManagerInstances must be positive");
  }
  ParseListenAddr(c.listen_addr);
  return c;
}

Config Config::LoadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  json j;
  try {
    j = json::parse(ss.str());
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kSyntax, "config " + path + ": " + e.what());
  }
  return FromJson(j);
}

json Config::ToJson() const {
  return {{"listenAddr", listen_addr},
          {"blobRoot", blob_root},
          {"snapshotPath", snapshot_path},
          {"hmacSecretPath", hmac_secret_path},
          {"syncTimeoutSecs", sync_timeout_secs},
          {"cacheCapacityBytes", cache_capacity_bytes},
          {"workerPoolSize", worker_pool_size},
          {"stateDeliveryMode", blob::ToString(state_delivery_mode)},
          {"metadataCache", metadata_cache ? "on" : "off"},
          {"taskManagerInstances", task_manager_instances}};
}

std::pair<std::string, int> ParseListenAddr(const std::string& addr) {
  const auto colon = addr.rfind(':');
  if (colon == std::string::npos || colon == 0) {
    throw Error(ErrorCode::kInvalidArgument, "listenAddr must be host:port");
  }
  int port = -1;
  try {
    size_t used = 0;
    port = std::stoi(addr.substr(colon + 1), &used);
    if (used != addr.size() - colon - 1) port = -1;
  } catch (const std::exception&) {
  }
  if (port < 0 || port > 65535) throw Error(ErrorCode::kInvalidArgument, "bad port in " + addr);
  return {addr.substr(0, colon), port};
}

}  // namespace oaas::platform
