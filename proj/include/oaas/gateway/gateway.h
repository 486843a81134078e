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

#ifndef OAAS_GATEWAY_GATEWAY_H_
#define OAAS_GATEWAY_GATEWAY_H_

#include <memory>
#include <string>
#include <vector>

#include "oaas/blob/blob_client.h"
#include "oaas/control/object_controller.h"
#include "oaas/gateway/content_cache.h"
#include "oaas/gateway/instance_pool.h"

namespace httplib {
class Server;
struct Request;
struct Response;
}  // namespace httplib

namespace oaas::gateway {

/// The public front. End-user requests go to task-manager instances over
/// HTTP in round-robin; content behind a 303 is fetched, cached and served
/// unless the client asked to follow redirects itself. Developer APIs are
/// served in-process by the object controller.
class Gateway {
 public:
  struct Options {
    uint64_t cache_capacity_bytes = 256ull << 20;
    int upstream_timeout_seconds = 150;
    int64_t retry_after_millis = 1000;
  };

  Gateway(Options options, std::vector<std::string> instance_urls,
          std::shared_ptr<control::ObjectController> controller,
          std::shared_ptr<Clock> clock = DefaultClock());

  void Mount(httplib::Server& server);

  ContentCache& cache() { return cache_; }
  InstancePool& pool() { return pool_; }
  uint64_t blob_fetches() const { return blob_fetches_.load(); }

 private:
  struct Upstream {
    int status = 0;
    std::string body;
    std::string content_type;
    std::string location;
    std::string object_id;
    std::string key;
  };
  Upstream Forward(const std::string& method, const std::string& path,
                   const std::string& body);
  void ServeOai(const httplib::Request& req, httplib::Response& res);
  void ServeEntry(httplib::Response& res, const ContentCacheEntry& entry,
                  const std::string& object_id, const std::string& key, bool hit);
  static void PassThrough(httplib::Response& res, const Upstream& up);

  Options options_;
  InstancePool pool_;
  std::shared_ptr<control::ObjectController> controller_;
  ContentCache cache_;
  blob::HttpBlobClient fetcher_;
  std::atomic<uint64_t> blob_fetches_{0};
};

}  // namespace oaas::gateway

#endif  // OAAS_GATEWAY_GATEWAY_H_
