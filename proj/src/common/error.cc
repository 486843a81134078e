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

#include "oaas/common/error.h"

#include <array>
#include <utility>

namespace oaas {
namespace {

constexpr std::array<std::pair<ErrorCode, std::string_view>, 21> kNames = {{
    {ErrorCode::kInvalidArgument, "InvalidArgument"},
    {ErrorCode::kSyntax, "SyntaxError"},
    {ErrorCode::kSchema, "SchemaError"},
    {ErrorCode::kValidationFailed, "ValidationFailed"},
    {ErrorCode::kOaiSyntax, "OaiSyntaxError"},
    {ErrorCode::kNotFound, "NotFound"},
    {ErrorCode::kUnknownClass, "UnknownClass"},
    {ErrorCode::kUnknownFunction, "UnknownFunction"},
    {ErrorCode::kUnknownObject, "UnknownObject"},
    {ErrorCode::kUnknownStateKey, "UnknownStateKey"},
    {ErrorCode::kUnknownBinding, "UnknownBinding"},
    {ErrorCode::kCyclicInheritance, "CyclicInheritance"},
    {ErrorCode::kAccessDenied, "AccessDenied"},
    {ErrorCode::kVersionConflict, "VersionConflict"},
    {ErrorCode::kSourceNotCompleted, "SourceNotCompleted"},
    {ErrorCode::kMissingBlob, "MissingBlob"},
    {ErrorCode::kTimeout, "Timeout"},
    {ErrorCode::kCorruptSnapshot, "CorruptSnapshot"},
    {ErrorCode::kIo, "IoError"},
    {ErrorCode::kUnavailable, "Unavailable"},
    {ErrorCode::kInternal, "Internal"},
}};

}  // namespace

std::string_view ErrorCodeName(ErrorCode code) {
  for (const auto& [c, name] : kNames) {
    if (c == code) return name;
  }
  return "Internal";
}

int HttpStatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kSyntax:
    case ErrorCode::kSchema:
    case ErrorCode::kValidationFailed:
    case ErrorCode::kOaiSyntax:
    case ErrorCode::kUnknownStateKey:
    case ErrorCode::kUnknownBinding:
    case ErrorCode::kCyclicInheritance:
    case ErrorCode::kMissingBlob:
      return 400;
    case ErrorCode::kAccessDenied:
      return 403;
    case ErrorCode::kNotFound:
    case ErrorCode::kUnknownClass:
    case ErrorCode::kUnknownFunction:
    case ErrorCode::kUnknownObject:
      return 404;
    case ErrorCode::kVersionConflict:
    case ErrorCode::kSourceNotCompleted:
      return 409;
    case ErrorCode::kUnavailable:
      return 503;
    case ErrorCode::kTimeout:
      return 504;
    case ErrorCode::kCorruptSnapshot:
    case ErrorCode::kIo:
    case ErrorCode::kInternal:
      return 500;
  }
  return 500;
}

nlohmann::json Error::ToJson() const {
  nlohmann::json j = {{"error", std::string(ErrorCodeName(code_))},
                      {"message", what()}};
  if (!details_.is_null()) j["details"] = details_;
  return j;
}

Error ErrorFromJson(const nlohmann::json& j) {
  ErrorCode code = ErrorCode::kInternal;
  const std::string name = j.value("error", "");
  for (const auto& [c, n] : kNames) {
    if (n == name) code = c;
  }
  return Error(code, j.value("message", name),
               j.contains("details") ? j["details"] : nlohmann::json());
}

}  // namespace oaas
