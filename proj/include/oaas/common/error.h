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

#ifndef OAAS_COMMON_ERROR_H_
#define OAAS_COMMON_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace oaas {

enum class ErrorCode {
  kInvalidArgument,
  kSyntax,
  kSchema,
  kValidationFailed,
  kOaiSyntax,
  kNotFound,
  kUnknownClass,
  kUnknownFunction,
  kUnknownObject,
  kUnknownStateKey,
  kUnknownBinding,
  kCyclicInheritance,
  kAccessDenied,
  kVersionConflict,
  kSourceNotCompleted,
  kMissingBlob,
  kTimeout,
  kCorruptSnapshot,
  kIo,
  kUnavailable,
  kInternal,
};

std::string_view ErrorCodeName(ErrorCode code);

/// HTTP status used when an error crosses a REST boundary.
int HttpStatusFor(ErrorCode code);

/// The platform-wide exception type. `details` carries structured context
/// (validation report, conflicting version, byte offset, missing keys).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        nlohmann::json details = nullptr)
      : std::runtime_error(message), code_(code), details_(std::move(details)) {}

  ErrorCode code() const noexcept { return code_; }
  const nlohmann::json& details() const noexcept { return details_; }

  nlohmann::json ToJson() const;

 private:
  ErrorCode code_;
  nlohmann::json details_;
};

/// Rebuilds an Error from its ToJson() form. Unknown codes map to kInternal.
Error ErrorFromJson(const nlohmann::json& j);

}  // namespace oaas

#endif  // OAAS_COMMON_ERROR_H_
