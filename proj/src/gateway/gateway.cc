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

#include "oaas/gateway/gateway.h"

#include <httplib.h>

#include "oaas/common/error.h"
#include "oaas/gateway/routes.h"
#include "oaas/model/oai.h"

namespace oaas::gateway {

Gateway::Gateway(Options options, std::vector<std::string> instance_urls,
                 std::shared_ptr<control::ObjectController> controller,
                 std::shared_ptr<Clock> clock)
    : options_(options),
      pool_(std::move(instance_urls), options.retry_after_millis, clock),
      controller_(std::move(controller)),
      cache_(options.cache_capacity_bytes, clock),
      fetcher_(options.upstream_timeout_seconds) {}

void Gateway::Mount(httplib::Server& server) {
  server.Get(R"(/oal/.+)", [this](const httplib::Request& req, httplib::Response& res) {
    try {
      ServeOai(req, res);
    } catch (const Error& e) {
      SendError(res, e);
    }
  });
  server.Post("/api/invocations", [this](const httplib::Request& req, httplib::Response& res) {
    try {
      PassThrough(res, Forward("POST", "/api/invocations", req.body));
    } catch (const Error& e) {
      SendError(res, e);
    }
  });
  server.Get(R"(/api/objects/([^/]+))", [this](const httplib::Request& req,
                                               httplib::Response& res) {
    try {
      PassThrough(res, Forward("GET", req.target, ""));
    } catch (const Error& e) {
      SendError(res, e);
    }
  });
  MountControllerRoutes(server, controller_);
}

Gateway::Upstream Gateway::Forward(const std::string& method, const std::string& path,
                                   const std::string& body) {
  for (size_t attempt = 0; attempt < pool_.size(); ++attempt) {
    const auto pick = pool_.Next();
    if (!pick) break;
    httplib::Client cli(pick->url);
    cli.set_connection_timeout(2);
    // The path is forwarded verbatim; re-encoding would turn OAI argument
    // separators into literal commas.
    cli.set_url_encode(false);
    cli.set_read_timeout(options_.upstream_timeout_seconds);
    cli.set_write_timeout(options_.upstream_timeout_seconds);
    auto r = method == "POST" ? cli.Post(path, body, "application/json") : cli.Get(path);
    if (!r) {
      pool_.MarkFailed(pick->index);
      continue;
    }
    pool_.MarkHealthy(pick->index);
    Upstream up;
    up.status = r->status;
    up.body = std::move(r->body);
    up.content_type = r->get_header_value("Content-Type");
    up.location = r->get_header_value("Location");
    up.object_id = r->get_header_value(kObjectHeader);
    up.key = r->get_header_value(kKeyHeader);
    return up;
  }
  throw Error(ErrorCode::kUnavailable, "no task-manager instance reachable");
}

void Gateway::PassThrough(httplib::Response& res, const Upstream& up) {
  res.status = up.status;
  if (!up.location.empty()) res.set_header("Location", up.location);
  if (!up.object_id.empty()) res.set_header(kObjectHeader, up.object_id);
  if (!up.key.empty()) res.set_header(kKeyHeader, up.key);
  res.set_content(up.body, up.content_type.empty() ? "application/json" : up.content_type);
}

void Gateway::ServeEntry(httplib::Response& res, const ContentCacheEntry& entry,
                         const std::string& object_id, const std::string& key, bool hit) {
  res.status = 200;
  res.set_header(kObjectHeader, object_id);
  res.set_header(kKeyHeader, key);
  res.set_header("X-OaaS-Cache", hit ? "hit" : "miss");
  auto bytes = entry.bytes;
  res.set_content_provider(
      bytes->size(), "application/octet-stream",
      [bytes](size_t offset, size_t length, httplib::DataSink& sink) {
        sink.write(bytes->data() + offset, std::min<size_t>(length, 1 << 20));
        return true;
      });
}

void Gateway::ServeOai(const httplib::Request& req, httplib::Response& res) {
  const std::string raw = OaiFromTarget(req.target);
  const auto oai = model::ParseOai(raw);
  const bool pass = req.get_header_value(kRedirectHeader) == "pass";
  const std::string canonical = model::PrintOai(oai);

  if (oai.content_key) {
    if (auto alias = cache_.FindAlias(canonical)) {
      if (auto entry = cache_.Get(*alias)) {
        const auto slash = alias->find('/');
        ServeEntry(res, *entry, alias->substr(0, slash), alias->substr(slash + 1), true);
        return;
      }
    }
  }

  Upstream up = Forward("GET", "/oal/" + raw, "");
  const bool tagged = !up.object_id.empty() && !up.key.empty();
  if (!tagged || (up.status != 303 && up.status != 200)) {
    PassThrough(res, up);
    return;
  }
  const std::string cache_key = ContentCache::Key(up.object_id, up.key);
  if (up.status == 303 && pass) {
    PassThrough(res, up);
    return;
  }
  auto entry = cache_.Get(cache_key);
  if (!entry) {
    std::string bytes;
    if (up.status == 303) {
      blob_fetches_.fetch_add(1);
      bytes = fetcher_.Get(up.location);
    } else {
      bytes = std::move(up.body);
    }
    if (cache_.Put(cache_key, bytes)) {
      entry = cache_.Get(cache_key);
    } else {
      ContentCacheEntry uncached;
      uncached.cache_key = cache_key;
      uncached.size_bytes = bytes.size();
      uncached.bytes = std::make_shared<const std::string>(std::move(bytes));
      entry = std::move(uncached);
    }
  }
  cache_.PutAlias(canonical, cache_key);
  ServeEntry(res, *entry, up.object_id, up.key, false);
}

}  // namespace oaas::gateway
