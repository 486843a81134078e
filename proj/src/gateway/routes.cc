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

#include "oaas/gateway/routes.h"

#include <httplib.h>

#include "oaas/common/error.h"
#include "oaas/model/oai.h"

namespace oaas::gateway {
namespace {

using nlohmann::json;

void SendJson(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

// Runs `fn` and turns whatever it throws into a JSON error response.
template <typename Fn>
void Guard(httplib::Response& res, Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    SendError(res, e);
  } catch (const json::exception& e) {
    SendError(res, Error(ErrorCode::kInvalidArgument, std::string("bad JSON: ") + e.what()));
  } catch (const std::exception& e) {
    SendError(res, Error(ErrorCode::kInternal, e.what()));
  }
}

void SendInvokeResult(httplib::Response& res, const invoke::InvokeResult& r,
                      const model::OaiRequest& req) {
  if (r.content) {
    res.set_header(kObjectHeader, r.record.id);
    res.set_header(kKeyHeader, *req.content_key);
    if (const auto* redirect = std::get_if<blob::StateRedirect>(&*r.content)) {
      res.status = 303;
      res.set_header("Location", redirect->location);
    } else {
      res.status = 200;
      res.set_content(std::get<blob::StateContent>(*r.content).bytes,
                      "application/octet-stream");
    }
    return;
  }
  SendJson(res, r.record.status == kv::ObjectStatus::kFailed ? 502 : 200, r.record.ToJson());
}

}  // namespace

void SendError(httplib::Response& res, const Error& e) {
  SendJson(res, HttpStatusFor(e.code()), e.ToJson());
}

std::string OaiFromTarget(const std::string& target) {
  constexpr std::string_view kPrefix = "/oal/";
  std::string_view t = target;
  if (t.substr(0, kPrefix.size()) != kPrefix) return "";
  t.remove_prefix(kPrefix.size());
  return std::string(t.substr(0, t.find('?')));
}

void MountTaskManagerRoutes(httplib::Server& server,
                            std::shared_ptr<invoke::TaskManager> tm) {
  server.Get(R"(/oal/.+)", [tm](const httplib::Request& req, httplib::Response& res) {
    Guard(res, [&] {
      const auto oai = model::ParseOai(OaiFromTarget(req.target));
      SendInvokeResult(res, tm->Invoke(oai, invoke::InvokeMode::kSync), oai);
    });
  });

  server.Post("/api/invocations", [tm](const httplib::Request& req, httplib::Response& res) {
    Guard(res, [&] {
      const json body = json::parse(req.body);
      auto oai = model::ParseOai(body.at("oai").get<std::string>());
      oai.inputs = body.value("inputs", std::vector<std::string>{});
      if (body.value("async", true)) {
        SendJson(res, 202, tm->Invoke(oai, invoke::InvokeMode::kAsync).record.ToJson());
      } else {
        SendInvokeResult(res, tm->Invoke(oai, invoke::InvokeMode::kSync), oai);
      }
    });
  });

  server.Get(R"(/api/objects/([^/]+))", [tm](const httplib::Request& req,
                                             httplib::Response& res) {
    Guard(res, [&] { SendJson(res, 200, tm->GetStatus(req.matches[1])); });
  });
}

void MountControllerRoutes(httplib::Server& server,
                           std::shared_ptr<control::ObjectController> controller) {
  server.Post("/api/packages", [controller](const httplib::Request& req,
                                            httplib::Response& res) {
    Guard(res, [&] { SendJson(res, 200, controller->RegisterPackageText(req.body).ToJson()); });
  });

  server.Get(R"(/api/deployments/([^/]+))", [controller](const httplib::Request& req,
                                                         httplib::Response& res) {
    Guard(res, [&] {
      const auto st = controller->Deployment(req.matches[1]);
      if (!st) {
        throw Error(ErrorCode::kUnknownFunction, "no deployment for " + req.matches[1].str());
      }
      SendJson(res, 200, st->ToJson());
    });
  });

  server.Post(R"(/api/classes/([^/]+)/objects)", [controller](const httplib::Request& req,
                                                              httplib::Response& res) {
    Guard(res, [&] {
      const json body = req.body.empty() ? json::object() : json::parse(req.body);
      std::optional<std::string> id;
      if (body.contains("id")) id = body.at("id").get<std::string>();
      const auto r = controller->InstantiateObject(
          req.matches[1], body.value("structuredState", json(nullptr)),
          body.value("uploadKeys", std::vector<std::string>{}), id);
      SendJson(res, 201, r.ToJson());
    });
  });

  server.Post(R"(/api/objects/([^/]+)/confirm)", [controller](const httplib::Request& req,
                                                              httplib::Response& res) {
    Guard(res, [&] { SendJson(res, 200, controller->ConfirmUpload(req.matches[1]).ToJson()); });
  });
}

}  // namespace oaas::gateway
