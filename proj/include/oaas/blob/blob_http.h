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

#ifndef OAAS_BLOB_BLOB_HTTP_H_
#define OAAS_BLOB_BLOB_HTTP_H_

#include <memory>

#include "oaas/blob/blob_store.h"

namespace httplib {
class Server;
}

namespace oaas::blob {

/// Mounts `GET|PUT /blob/{bucket}/{objectId}/{key}?expires=&method=&sig=`.
/// 403 on verification failure, 404 on a missing blob. GET bodies are
/// streamed from the committed file.
void MountBlobRoutes(httplib::Server& server, std::shared_ptr<BlobStore> store);

}  // namespace oaas::blob

#endif  // OAAS_BLOB_BLOB_HTTP_H_
