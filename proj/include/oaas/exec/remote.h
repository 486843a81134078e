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

#ifndef OAAS_EXEC_REMOTE_H_
#define OAAS_EXEC_REMOTE_H_

#include <string>

#include "oaas/exec/task.h"

namespace oaas::exec {

/// POSTs the envelope as JSON to `endpoint`. 2xx is success; a JSON body
/// with "structuredOutput" is carried into the completion. Never throws.
TaskCompletion RemoteHttpExecute(const TaskEnvelope& envelope,
                                 const std::string& endpoint,
                                 int timeout_seconds);

/// GET {endpoint}/healthz; true on 2xx. `detail` receives the reason on
/// failure.
bool ProbeHealth(const std::string& endpoint, std::string* detail,
                 int timeout_seconds = 5);

}  // namespace oaas::exec

#endif  // OAAS_EXEC_REMOTE_H_
