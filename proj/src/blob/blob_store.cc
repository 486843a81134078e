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

#include "oaas/blob/blob_store.h"

#include <fstream>
#include <sstream>

#include "oaas/common/error.h"
#include "oaas/common/ids.h"

namespace oaas::blob {

namespace fs = std::filesystem;

BlobStore::BlobStore(fs::path root, std::shared_ptr<const UrlSigner> signer,
                     std::shared_ptr<Clock> clock)
    : root_(std::move(root)), signer_(std::move(signer)), clock_(std::move(clock)) {
  fs::create_directories(root_ / ".tmp");
}

fs::path BlobStore::FileFor(const BlobPath& path) const {
  return root_ / path.bucket() / path.object_id() / path.key();
}

void BlobStore::Authorize(const BlobPath& path, HttpMethod method,
                          const PresignedUrl& auth) const {
  if (!signer_->Verify(auth, method, path, clock_->NowSeconds())) {
    throw Error(ErrorCode::kAccessDenied,
                "access denied to " + path.ToString() + " for " +
                    std::string(ToString(method)));
  }
  Observe(path, method);
}

void BlobStore::Observe(const BlobPath& path, HttpMethod method) const {
  if (method == HttpMethod::kGet) {
    gets_.fetch_add(1);
  } else {
    puts_.fetch_add(1);
  }
  std::lock_guard lock(observer_mu_);
  if (observer_) observer_(path, method);
}

size_t BlobStore::Put(const BlobPath& path, std::string_view content,
                      const PresignedUrl& auth) {
  Authorize(path, HttpMethod::kPut, auth);
  {
    std::lock_guard lock(observer_mu_);
    if (guard_ && !guard_(path)) {
      throw Error(ErrorCode::kAccessDenied, path.ToString() + " is sealed");
    }
  }
  WriteTrusted(path, content);
  return content.size();
}

std::string BlobStore::Get(const BlobPath& path, const PresignedUrl& auth) const {
  Authorize(path, HttpMethod::kGet, auth);
  return ReadTrusted(path);
}

bool BlobStore::Exists(const BlobPath& path) const {
  std::error_code ec;
  return fs::is_regular_file(FileFor(path), ec);
}

std::optional<uint64_t> BlobStore::SizeOf(const BlobPath& path) const {
  std::error_code ec;
  const auto size = fs::file_size(FileFor(path), ec);
  if (ec) return std::nullopt;
  return size;
}

std::string BlobStore::ReadTrusted(const BlobPath& path) const {
  std::ifstream in(FileFor(path), std::ios::binary);
  if (!in) throw Error(ErrorCode::kNotFound, "no blob at " + path.ToString());
  in.seekg(0, std::ios::end);
  const auto size = static_cast<size_t>(in.tellg());
  in.seekg(0);
  std::string out(size, '\0');
  in.read(out.data(), static_cast<std::streamsize>(size));
  if (!in) throw Error(ErrorCode::kIo, "short read on " + path.ToString());
  return out;
}

void BlobStore::WriteTrusted(const BlobPath& path, std::string_view content) {
  const fs::path target = FileFor(path);
  std::error_code ec;
  fs::create_directories(target.parent_path(), ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + target.parent_path().string());
  const fs::path tmp = root_ / ".tmp" / NewUuid();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      fs::remove(tmp, ec);
      throw Error(ErrorCode::kIo, "cannot write blob " + path.ToString());
    }
  }
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::kIo, "cannot commit blob " + path.ToString());
  }
}

void BlobStore::SetAccessObserver(AccessObserver observer) {
  std::lock_guard lock(observer_mu_);
  observer_ = std::move(observer);
}

void BlobStore::SetWriteGuard(WriteGuard guard) {
  std::lock_guard lock(observer_mu_);
  guard_ = std::move(guard);
}

}  // namespace oaas::blob
