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

#include "oaas/blob/presigned_url.h"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include "oaas/common/digest.h"
#include "oaas/common/error.h"

namespace oaas::blob {
namespace {

constexpr std::string_view kPrefix = "/blob/";

[[noreturn]] void Reject(const std::string& why) {
  throw Error(ErrorCode::kAccessDenied, "invalid presigned URL: " + why);
}

}  // namespace

std::string_view ToString(HttpMethod m) {
  return m == HttpMethod::kGet ? "GET" : "PUT";
}

HttpMethod HttpMethodFromString(std::string_view s) {
  if (s == "GET") return HttpMethod::kGet;
  if (s == "PUT") return HttpMethod::kPut;
  throw Error(ErrorCode::kInvalidArgument, "unsupported method '" + std::string(s) + "'");
}

std::string PresignedUrl::Target() const {
  return std::string(kPrefix) + path.ToString() +
         "?expires=" + std::to_string(expires_at) +
         "&method=" + std::string(ToString(method)) + "&sig=" + signature;
}

std::string PresignedUrl::ToUrl(std::string_view base) const {
  return std::string(base) + Target();
}

PresignedUrl PresignedUrl::Parse(std::string_view url) {
  if (const auto scheme = url.find("://"); scheme != std::string_view::npos) {
    const auto slash = url.find('/', scheme + 3);
    if (slash == std::string_view::npos) Reject("no path");
    url = url.substr(slash);
  }
  const auto q = url.find('?');
  if (q == std::string_view::npos) Reject("no signature");
  const std::string_view p = url.substr(0, q);
  if (!p.starts_with(kPrefix)) Reject("not a blob path");

  std::optional<int64_t> expires;
  std::optional<HttpMethod> method;
  std::optional<std::string> sig;
  std::string_view query = url.substr(q + 1);
  while (!query.empty()) {
    const auto amp = query.find('&');
    const std::string_view pair = query.substr(0, amp);
    query = amp == std::string_view::npos ? "" : query.substr(amp + 1);
    const auto eq = pair.find('=');
    if (eq == std::string_view::npos) continue;
    const std::string_view k = pair.substr(0, eq);
    const std::string_view v = pair.substr(eq + 1);
    if (k == "expires") {
      int64_t e = 0;
      auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), e);
      if (ec != std::errc() || ptr != v.data() + v.size()) Reject("bad expires");
      expires = e;
    } else if (k == "method") {
      if (v == "GET") {
        method = HttpMethod::kGet;
      } else if (v == "PUT") {
        method = HttpMethod::kPut;
      } else {
        Reject("bad method");
      }
    } else if (k == "sig") {
      sig = std::string(v);
    }
  }
  if (!expires || !method || !sig) Reject("missing signing parameters");
  try {
    return PresignedUrl{BlobPath::Parse(p.substr(kPrefix.size())), *method,
                        *expires, *sig};
  } catch (const Error& e) {
    Reject(e.what());
  }
}

UrlSigner::UrlSigner(std::string secret) : secret_(std::move(secret)) {
  if (secret_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "signing secret must not be empty");
  }
}

std::string UrlSigner::Sign(const BlobPath& path, HttpMethod method,
                            int64_t expires_at) const {
  std::string msg(ToString(method));
  msg += '\n';
  msg += path.ToString();
  msg += '\n';
  msg += std::to_string(expires_at);
  return HmacSha256Hex(secret_, msg);
}

PresignedUrl UrlSigner::Presign(const BlobPath& path, HttpMethod method,
                                int64_t ttl_seconds, int64_t now_seconds) const {
  if (ttl_seconds < 1) {
    throw Error(ErrorCode::kInvalidArgument, "ttl must be at least 1 second");
  }
  const int64_t expires = now_seconds + ttl_seconds;
  return PresignedUrl{path, method, expires, Sign(path, method, expires)};
}

bool UrlSigner::Verify(const PresignedUrl& url, HttpMethod method,
                       const BlobPath& path, int64_t now_seconds) const {
  const std::string expected = Sign(url.path, url.method, url.expires_at);
  const bool sig_ok = ConstantTimeEquals(expected, url.signature);
  return sig_ok && url.method == method && url.path == path &&
         now_seconds <= url.expires_at;
}

std::string LoadSecret(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read secret file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string s = ss.str();
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  if (s.empty()) throw Error(ErrorCode::kIo, "secret file " + path + " is empty");
  return s;
}

}  // namespace oaas::blob
