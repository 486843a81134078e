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

#ifndef OAAS_MODEL_ACCESS_H_
#define OAAS_MODEL_ACCESS_H_

#include <string_view>

#include "oaas/model/resolve.h"

namespace oaas::model {

enum class CallerContext { kExternal, kSamePackage };

/// Public bindings are always callable; internal ones only from the package
/// that declares them. Throws Error(kUnknownBinding) if absent.
bool CheckAccess(CallerContext caller, const ResolvedClass& cls,
                 std::string_view binding);

/// Context of a caller acting on behalf of `caller_package` ("" for end
/// users) with respect to the class that declares `binding`.
CallerContext ContextFor(std::string_view caller_package,
                         const ResolvedBinding& binding);

}  // namespace oaas::model

#endif  // OAAS_MODEL_ACCESS_H_
