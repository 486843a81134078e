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

#ifndef OAAS_EXEC_BUILTINS_H_
#define OAAS_EXEC_BUILTINS_H_

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "oaas/blob/blob_client.h"
#include "oaas/exec/task.h"

namespace oaas::exec {

/// A builtin sees only its Task and a client that can follow the Task's
/// presigned URLs. Throwing yields a failure completion.
using BuiltinFn =
    std::function<TaskCompletion(const Task& task, blob::BlobClient& blobs)>;

/// Appends args["append"] to the main object's "str" blob.
TaskCompletion BuiltinConcat(const Task& task, blob::BlobClient& blobs);

/// Doubles structuredState.pairs with fresh 10-byte keys and 40-byte values.
/// Pairs of extra inputs are unioned in first. Seeded by args["seed"].
TaskCompletion BuiltinJsonUpdate(const Task& task, blob::BlobClient& blobs);

/// iters_per_kib * ceil(size / 1024) passes of a checksum loop over the
/// main blob (or the slice `part` of `parts`); writes the checksum hex.
TaskCompletion BuiltinCpuBurn(const Task& task, blob::BlobClient& blobs);

/// The checksum loop itself, exposed for oracles.
uint64_t BurnChecksum(std::string_view data, uint64_t iterations);

class BuiltinRegistry {
 public:
  /// concat, json_update and cpu_burn.
  static BuiltinRegistry Default();

  void Add(std::string name, BuiltinFn fn);
  const BuiltinFn* Find(std::string_view name) const;
  bool Has(std::string_view name) const { return Find(name) != nullptr; }
  std::vector<std::string> Names() const;

 private:
  std::map<std::string, BuiltinFn, std::less<>> fns_;
};

}  // namespace oaas::exec

#endif  // OAAS_EXEC_BUILTINS_H_
