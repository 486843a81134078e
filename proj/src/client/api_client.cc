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

#include "oaas/client/api_client.h"

#include <chrono>
#include <string_view>
#include <thread>

#include <httplib.h>

#include "oaas/blob/blob_client.h"
#include "oaas/common/error.h"
#include "oaas/gateway/routes.h"

namespace oaas::client {
namespace {

using nlohmann::json;

[[noreturn]] void ThrowFrom(const httplib::Result& r) {
  if (!r) {
    throw Error(ErrorCode::kUnavailable,
                "gateway unreachable: " + httplib::to_string(r.error()));
  }
  json body = json::parse(r->body, nullptr, false);
  if (body.is_object() && body.contains("error")) throw ErrorFromJson(body);
  throw Error(ErrorCode::kInternal, "unexpected status " + std::to_string(r->status));
}

json Expect(const httplib::Result& r, int status) {
  if (!r || r->status != status) ThrowFrom(r);
  return json::parse(r->body);
}

httplib::Client Connect(const std::string& base, int timeout_seconds) {
  httplib::Client cli(base);
  cli.set_connection_timeout(5);
  cli.set_read_timeout(timeout_seconds);
  cli.set_write_timeout(timeout_seconds);
  return cli;
}

// Escapes what cannot appear raw in a request path, leaving the OAI
// punctuation and existing escapes alone.
std::string EscapePath(std::string_view expr) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (const char ch : expr) {
    const auto c = static_cast<unsigned char>(ch);
    if (c <= 0x20 || c >= 0x7f || ch == '#' || ch == '?' || ch == '"' || ch == '<' ||
        ch == '>' || ch == '\\' || ch == '^' || ch == '`' || ch == '{' || ch == '|' ||
        ch == '}') {
      out += '%';
      out += kHex[c >> 4];
      out += kHex[c & 15];
    } else {
      out += ch;
    }
  }
  return out;
}

}  // namespace

ApiClient::ApiClient(std::string base_url, int timeout_seconds)
    : base_url_(std::move(base_url)), timeout_seconds_(timeout_seconds) {}

json ApiClient::Deploy(const std::string& document) {
  auto cli = Connect(base_url_, timeout_seconds_);
  return Expect(cli.Post("/api/packages", document, "application/yaml"), 200);
}

json ApiClient::Deployment(const std::string& function) {
  auto cli = Connect(base_url_, timeout_seconds_);
  return Expect(cli.Get("/api/deployments/" + function), 200);
}

std::vector<json> ApiClient::AwaitDeployments(const json& registration, int timeout_millis) {
  std::vector<json> failed;
  const auto deadline =
      std::chrono::steady_clock::now() + std::chrono::milliseconds(timeout_millis);
  for (const auto& p : registration.value("provisions", json::array())) {
    const std::string fn = p.at("functionName");
    for (;;) {
      const json st = Deployment(fn);
      if (st["state"] == "ready") break;
      if (st["state"] == "failed") {
        failed.push_back(st);
        break;
      }
      if (std::chrono::steady_clock::now() > deadline) {
        throw Error(ErrorCode::kTimeout, "deployment of " + fn + " did not settle");
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(10));
    }
  }
  return failed;
}

json ApiClient::CreateObject(const std::string& class_name, const std::optional<std::string>& id,
                             const json& structured_state,
                             const std::map<std::string, std::string>& uploads) {
  auto cli = Connect(base_url_, timeout_seconds_);
  json body = {{"uploadKeys", json::array()}};
  for (const auto& [k, _] : uploads) body["uploadKeys"].push_back(k);
  if (id) body["id"] = *id;
  if (!structured_state.is_null()) body["structuredState"] = structured_state;
  const json created = Expect(
      cli.Post("/api/classes/" + class_name + "/objects", body.dump(), "application/json"), 201);
  if (uploads.empty()) return created.at("object");
  blob::HttpBlobClient blobs(timeout_seconds_);
  for (const auto& [k, bytes] : uploads) {
    blobs.Put(created.at("uploadUrls").at(k).get<std::string>(), bytes);
  }
  const std::string object_id = created.at("object").at("id");
  return Expect(cli.Post("/api/objects/" + object_id + "/confirm", "", "application/json"), 200);
}

OaiResponse ApiClient::Invoke(const std::string& expr, bool follow_redirects) {
  auto cli = Connect(base_url_, timeout_seconds_);
  httplib::Headers headers;
  if (follow_redirects) headers.emplace(gateway::kRedirectHeader, "pass");
  cli.set_url_encode(false);
  auto r = cli.Get("/oal/" + EscapePath(expr), headers);
  if (!r) ThrowFrom(r);
  OaiResponse out;
  out.status = r->status;
  out.object_id = r->get_header_value(gateway::kObjectHeader);
  if (r->status == 303) {
    out.content = blob::HttpBlobClient(timeout_seconds_).Get(r->get_header_value("Location"));
    out.status = 200;
  } else if (r->status == 200 && !out.object_id.empty()) {
    out.content = std::move(r->body);
  } else if (r->status == 200 || r->status == 502) {
    out.record = json::parse(r->body);
    out.object_id = out.record.value("id", "");
  } else {
    ThrowFrom(r);
  }
  return out;
}

json ApiClient::InvokeAsync(const std::string& expr, const std::vector<std::string>& inputs) {
  auto cli = Connect(base_url_, timeout_seconds_);
  json body = {{"oai", expr}, {"async", true}};
  if (!inputs.empty()) body["inputs"] = inputs;
  return Expect(cli.Post("/api/invocations", body.dump(), "application/json"), 202);
}

json ApiClient::Status(const std::string& object_id) {
  auto cli = Connect(base_url_, timeout_seconds_);
  return Expect(cli.Get("/api/objects/" + object_id), 200);
}

}  // namespace oaas::client
