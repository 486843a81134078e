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

#ifndef OAAS_GATEWAY_ROUTES_H_
#define OAAS_GATEWAY_ROUTES_H_

#include <memory>
#include <string>

#include "oaas/common/error.h"
#include "oaas/control/object_controller.h"
#include "oaas/invoke/task_manager.h"

namespace httplib {
class Server;
struct Response;
}  // namespace httplib

namespace oaas::gateway {

// Response headers naming the object and key behind a content response.
inline constexpr char kObjectHeader[] = "X-OaaS-Object";
inline constexpr char kKeyHeader[] = "X-OaaS-Key";
// A client sending "X-OaaS-Redirect: pass" follows 303s itself.
inline constexpr char kRedirectHeader[] = "X-OaaS-Redirect";

void SendError(httplib::Response& res, const Error& e);

/// Task-manager surface:
///   GET  /oal/{oai}        sync invoke or content access
///   POST /api/invocations  {oai, async?, inputs?} -> 202 prospective record
///   GET  /api/objects/{id} status view
/// A content request answers 303 (redirect mode) or 200 with the bytes
/// (relay mode), tagged with the object and key headers. A sync call whose
/// output FAILED answers 502 with the record.
void MountTaskManagerRoutes(httplib::Server& server,
                            std::shared_ptr<invoke::TaskManager> tm);

/// Developer surface:
///   POST /api/packages, GET /api/deployments/{fn},
///   POST /api/classes/{class}/objects, POST /api/objects/{id}/confirm
void MountControllerRoutes(httplib::Server& server,
                           std::shared_ptr<control::ObjectController> controller);

/// The raw expression in a "/oal/..." request target.
std::string OaiFromTarget(const std::string& target);

}  // namespace oaas::gateway

#endif  // OAAS_GATEWAY_ROUTES_H_
