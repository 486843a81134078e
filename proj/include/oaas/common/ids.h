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

#ifndef OAAS_COMMON_IDS_H_
#define OAAS_COMMON_IDS_H_

#include <string>
#include <string_view>

namespace oaas {

/// Random UUIDv4 in canonical lowercase form.
std::string NewUuid();

/// True when `s` is a non-empty run of [A-Za-z0-9_.-].
bool IsIdentifier(std::string_view s);

/// Like IsIdentifier but without '.', used for names that get qualified
/// as "package.name".
bool IsSimpleName(std::string_view s);

}  // namespace oaas

#endif  // OAAS_COMMON_IDS_H_
