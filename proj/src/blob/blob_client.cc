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

#include "oaas/blob/blob_client.h"

#include <httplib.h>

#include "oaas/common/error.h"

namespace oaas::blob {
namespace {

[[noreturn]] void ThrowForStatus(int status, std::string_view url,
                                 const std::string& body) {
  const std::string what = std::string(url) + ": status " + std::to_string(status);
  switch (status) {
    case 403:
      throw Error(ErrorCode::kAccessDenied, what);
    case 404:
      throw Error(ErrorCode::kNotFound, what);
    default:
      throw Error(ErrorCode::kUnavailable, what + " " + body.substr(0, 200));
  }
}

}  // namespace

std::pair<std::string, std::string> SplitUrl(std::string_view url) {
  const auto scheme = url.find("://");
  if (scheme == std::string_view::npos) {
    throw Error(ErrorCode::kInvalidArgument, "not an absolute URL: " + std::string(url));
  }
  const auto slash = url.find('/', scheme + 3);
  if (slash == std::string_view::npos) return {std::string(url), "/"};
  return {std::string(url.substr(0, slash)), std::string(url.substr(slash))};
}

std::string LocalBlobClient::Get(std::string_view url) {
  const auto u = PresignedUrl::Parse(url);
  return store_->Get(u.path, u);
}

void LocalBlobClient::Put(std::string_view url, std::string_view content) {
  const auto u = PresignedUrl::Parse(url);
  store_->Put(u.path, content, u);
}

std::string HttpBlobClient::Get(std::string_view url) {
  auto [base, target] = SplitUrl(url);
  httplib::Client cli(base);
  cli.set_connection_timeout(timeout_seconds_);
  cli.set_read_timeout(timeout_seconds_);
  auto res = cli.Get(target);
  if (!res) {
    throw Error(ErrorCode::kUnavailable,
                std::string(url) + ": " + httplib::to_string(res.error()));
  }
  if (res->status != 200) ThrowForStatus(res->status, url, res->body);
  return std::move(res->body);
}

void HttpBlobClient::Put(std::string_view url, std::string_view content) {
  auto [base, target] = SplitUrl(url);
  httplib::Client cli(base);
  cli.set_connection_timeout(timeout_seconds_);
  cli.set_write_timeout(timeout_seconds_);
  cli.set_read_timeout(timeout_seconds_);
  auto res = cli.Put(target, content.data(), content.size(),
                     "application/octet-stream");
  if (!res) {
    throw Error(ErrorCode::kUnavailable,
                std::string(url) + ": " + httplib::to_string(res.error()));
  }
  if (res->status < 200 || res->status > 299) {
    ThrowForStatus(res->status, url, res->body);
  }
}

}  // namespace oaas::blob
