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

#ifndef OAAS_COMMON_DIGEST_H_
#define OAAS_COMMON_DIGEST_H_

#include <cstdint>
#include <string>
#include <string_view>

namespace oaas {

std::string Sha256Hex(std::string_view data);
std::string HmacSha256Hex(std::string_view key, std::string_view message);

/// Constant-time equality for equal-length strings; false on length mismatch.
bool ConstantTimeEquals(std::string_view a, std::string_view b);

uint32_t Crc32(std::string_view data);

std::string PercentEncode(std::string_view s, std::string_view reserved);
/// Throws Error(kInvalidArgument) on a malformed escape.
std::string PercentDecode(std::string_view s);

}  // namespace oaas

#endif  // OAAS_COMMON_DIGEST_H_
