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

#include "oaas/blob/blob_http.h"

#include <fstream>

#include <httplib.h>

#include "oaas/common/error.h"

namespace oaas::blob {
namespace {

constexpr size_t kChunk = 1 << 20;

void SendError(httplib::Response& res, const Error& e) {
  res.status = HttpStatusFor(e.code());
  res.set_content(e.ToJson().dump(), "application/json");
}

}  // namespace

void MountBlobRoutes(httplib::Server& server, std::shared_ptr<BlobStore> store) {
  static const char* kPattern = R"(/blob/([^/]+)/([^/]+)/([^/?]+))";

  server.Get(kPattern, [store](const httplib::Request& req, httplib::Response& res) {
    try {
      const auto url = PresignedUrl::Parse(req.target);
      const BlobPath path(req.matches[1], req.matches[2], req.matches[3]);
      store->Authorize(path, HttpMethod::kGet, url);
      const auto size = store->SizeOf(path);
      if (!size) throw Error(ErrorCode::kNotFound, "no blob at " + path.ToString());
      // Open now so a concurrent rename cannot swap the file mid-stream.
      auto file = std::make_shared<std::ifstream>(store->FileFor(path), std::ios::binary);
      if (!*file) throw Error(ErrorCode::kNotFound, "no blob at " + path.ToString());
      res.set_content_provider(
          *size, "application/octet-stream",
          [file](size_t offset, size_t length, httplib::DataSink& sink) {
            std::string buf(std::min(length, kChunk), '\0');
            file->seekg(static_cast<std::streamoff>(offset));
            file->read(buf.data(), static_cast<std::streamsize>(buf.size()));
            const auto got = static_cast<size_t>(file->gcount());
            if (got == 0) return false;
            sink.write(buf.data(), got);
            return true;
          });
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kInvalidArgument) {
        SendError(res, Error(ErrorCode::kAccessDenied, e.what()));
      } else {
        SendError(res, e);
      }
    }
  });

  server.Put(kPattern, [store](const httplib::Request& req, httplib::Response& res) {
    try {
      const auto url = PresignedUrl::Parse(req.target);
      const BlobPath path(req.matches[1], req.matches[2], req.matches[3]);
      store->Put(path, req.body, url);
      res.status = 200;
      res.set_content(nlohmann::json{{"bytes", req.body.size()}}.dump(),
                      "application/json");
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kInvalidArgument) {
        SendError(res, Error(ErrorCode::kAccessDenied, e.what()));
      } else {
        SendError(res, e);
      }
    }
  });
}

}  // namespace oaas::blob
