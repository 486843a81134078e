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

#include "oaas/model/access.h"

#include "oaas/common/error.h"

namespace oaas::model {

bool CheckAccess(CallerContext caller, const ResolvedClass& cls,
                 std::string_view binding) {
  const ResolvedBinding* b = cls.FindBinding(binding);
  if (b == nullptr) {
    throw Error(ErrorCode::kUnknownBinding, "class '" + cls.name +
                                                "' has no function '" +
                                                std::string(binding) + "'");
  }
  if (b->binding.access == Access::kPublic) return true;
  return caller == CallerContext::kSamePackage;
}

CallerContext ContextFor(std::string_view caller_package,
                         const ResolvedBinding& binding) {
  if (!caller_package.empty() && PackageOf(binding.declared_in) == caller_package) {
    return CallerContext::kSamePackage;
  }
  return CallerContext::kExternal;
}

}  // namespace oaas::model
