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

#ifndef OAAS_BENCH_BENCH_H_
#define OAAS_BENCH_BENCH_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "oaas/blob/storage_adapter.h"

namespace oaas::bench {

struct Scenario {
  std::string function = "concat";  // concat | json_update | cpu_burn
  std::vector<uint64_t> state_sizes = {10'000};
  std::vector<size_t> concurrency = {1};
  blob::DeliveryMode mode = blob::DeliveryMode::kRedirect;
  bool metadata_cache = true;
  size_t repetitions = 1;
  // Sequential invocations each virtual client makes per repetition.
  size_t invocations_per_client = 1;
  uint64_t seed = 1;
  size_t workers = 4;
  // cpu_burn only.
  uint64_t iters_per_kib = 1;
};

struct Sample {
  std::string function;
  uint64_t size_bytes = 0;
  size_t concurrency = 0;
  std::string mode;
  std::string cache;
  size_t rep = 0;
  double latency_ms = 0;
  bool ok = false;
  std::string error;  // first failure detail, not part of the CSV
};

struct CellSummary {
  std::string function;
  uint64_t size_bytes = 0;
  size_t concurrency = 0;
  std::string mode;
  std::string cache;
  size_t count = 0;
  size_t failed = 0;
  double mean_ms = 0;
  double p50_ms = 0;
  double p95_ms = 0;
  double std_error_ms = 0;  // of the mean, over successful samples
};

inline constexpr char kCsvHeader[] =
    "function,size_bytes,concurrency,mode,cache,rep,latency_ms,outcome";

void WriteCsv(std::ostream& out, const std::vector<Sample>& samples);
std::string FormatSummary(const std::vector<CellSummary>& cells);

/// Nearest-rank percentile of an unsorted sample, p in (0, 100].
double Percentile(std::vector<double> values, double p);

/// Groups samples by (function, size, concurrency, mode, cache).
std::vector<CellSummary> Summarize(const std::vector<Sample>& samples);

/// The package every run deploys: a blob class with concat and cpu_burn
/// bindings and a record class with json_update.
const std::string& BenchPackage();

struct RunOptions {
  std::filesystem::path work_dir;  // blob root lives under here
  // Deletes each output blob once measured, so large sweeps do not fill
  // the disk. Happens outside the timed region.
  bool cleanup_outputs = true;
  std::function<void(const Sample&)> on_sample;
};

/// Boots an in-process platform configured for the scenario, creates a
/// fresh source object per cell and drives closed-loop clients through
/// the gateway over HTTP. Latency covers the full OAI round trip,
/// including following a redirect.
std::vector<Sample> Run(const Scenario& scenario, const RunOptions& options);

}  // namespace oaas::bench

#endif  // OAAS_BENCH_BENCH_H_
