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

#ifndef OAAS_PLATFORM_CONFIG_H_
#define OAAS_PLATFORM_CONFIG_H_

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

#include "oaas/blob/storage_adapter.h"

namespace oaas::platform {

/// Platform configuration, read from a JSON file. Every field is optional.
struct Config {
  std::string listen_addr = "127.0.0.1:8080";  // host:port, port 0 picks one
  std::string blob_root = "oaas-data/blobs";
  std::string snapshot_path;                   // empty: no persistence
  std::string hmac_secret_path;                // empty: random per run
  int64_t sync_timeout_secs = 120;
  uint64_t cache_capacity_bytes = 256ull << 20;
  size_t worker_pool_size = 4;
  blob::DeliveryMode state_delivery_mode = blob::DeliveryMode::kRedirect;
  bool metadata_cache = true;
  size_t task_manager_instances = 2;

  static Config FromJson(const nlohmann::json& j);
  static Config LoadFile(const std::string& path);
  nlohmann::json ToJson() const;
};

/// Splits "host:port". Throws Error(kInvalidArgument).
std::pair<std::string, int> ParseListenAddr(const std::string& addr);

}  // namespace oaas::platform

#endif  // OAAS_PLATFORM_CONFIG_H_
