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

#include "oaas/bench/bench.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>
#include <tuple>

#include "oaas/client/api_client.h"
#include "oaas/common/error.h"
#include "oaas/kv/object_record.h"
#include "oaas/platform/platform.h"

namespace oaas::bench {
namespace {

using nlohmann::json;

std::string RandomText(size_t n, std::mt19937_64& rng) {
  static constexpr char kAlphabet[] = "abcdefghijklmnopqrstuvwxyz0123456789";
  std::string s(n, '\0');
  for (auto& c : s) c = kAlphabet[rng() % (sizeof(kAlphabet) - 1)];
  return s;
}

// Pairs whose JSON encoding is roughly `size_bytes` long.
json RandomPairs(uint64_t size_bytes, std::mt19937_64& rng) {
  json pairs = json::object();
  const uint64_t n = std::max<uint64_t>(1, size_bytes / 64);
  for (uint64_t i = 0; i < n; ++i) {
    char key[24];
    std::snprintf(key, sizeof(key), "k%06llu", static_cast<unsigned long long>(i));
    pairs[key] = RandomText(48, rng);
  }
  return pairs;
}

struct Cell {
  std::string source_id;
  size_t input_pairs = 0;
};

}  // namespace

void WriteCsv(std::ostream& out, const std::vector<Sample>& samples) {
  out << kCsvHeader << "\n";
  for (const auto& s : samples) {
    char latency[32];
    std::snprintf(latency, sizeof(latency), "%.3f", s.latency_ms);
    out << s.function << ',' << s.size_bytes << ',' << s.concurrency << ',' << s.mode << ','
        << s.cache << ',' << s.rep << ',' << latency << ',' << (s.ok ? "ok" : "failed") << "\n";
  }
}

double Percentile(std::vector<double> values, double p) {
  if (values.empty()) return 0;
  std::sort(values.begin(), values.end());
  const auto rank = static_cast<size_t>(std::ceil(p / 100.0 * static_cast<double>(values.size())));
  return values[std::clamp<size_t>(rank, 1, values.size()) - 1];
}

std::vector<CellSummary> Summarize(const std::vector<Sample>& samples) {
  using Key = std::tuple<std::string, uint64_t, size_t, std::string, std::string>;
  std::map<Key, std::vector<const Sample*>> groups;
  std::vector<Key> order;
  for (const auto& s : samples) {
    Key k{s.function, s.size_bytes, s.concurrency, s.mode, s.cache};
    if (!groups.contains(k)) order.push_back(k);
    groups[k].push_back(&s);
  }
  std::vector<CellSummary> out;
  for (const auto& k : order) {
    CellSummary c;
    std::tie(c.function, c.size_bytes, c.concurrency, c.mode, c.cache) = k;
    std::vector<double> ok;
    for (const Sample* s : groups[k]) {
      ++c.count;
      if (s->ok) {
        ok.push_back(s->latency_ms);
      } else {
        ++c.failed;
      }
    }
    if (!ok.empty()) {
      double sum = 0;
      for (double v : ok) sum += v;
      c.mean_ms = sum / static_cast<double>(ok.size());
      double sq = 0;
      for (double v : ok) sq += (v - c.mean_ms) * (v - c.mean_ms);
      if (ok.size() > 1) {
        c.std_error_ms = std::sqrt(sq / static_cast<double>(ok.size() - 1)) /
                         std::sqrt(static_cast<double>(ok.size()));
      }
      c.p50_ms = Percentile(ok, 50);
      c.p95_ms = Percentile(ok, 95);
    }
    out.push_back(c);
  }
  return out;
}

std::string FormatSummary(const std::vector<CellSummary>& cells) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof(line), "%-12s %10s %5s %-8s %-5s %6s %6s %10s %10s %10s\n",
                "function", "size", "conc", "mode", "cache", "n", "failed", "p50_ms", "p95_ms",
                "mean_ms");
  out << line;
  for (const auto& c : cells) {
    std::snprintf(line, sizeof(line), "%-12s %10llu %5zu %-8s %-5s %6zu %6zu %10.3f %10.3f %10.3f\n",
                  c.function.c_str(), static_cast<unsigned long long>(c.size_bytes),
                  c.concurrency, c.mode.c_str(), c.cache.c_str(), c.count, c.failed, c.p50_ms,
                  c.p95_ms, c.mean_ms);
    out << line;
  }
  return out.str();
}

const std::string& BenchPackage() {
  static const std::string kPackage = R"(name: bench
classes:
  - name: blob
    stateKeys:
      - {key: str, form: unstructured, provider: s3}
    functions:
      - {name: concat, function: concat, outputClass: blob}
      - {name: burn, function: cpu_burn, outputClass: blob}
  - name: rec
    stateKeys:
      - {key: pairs, form: structured}
    functions:
      - {name: update, function: json_update, outputClass: rec}
functions:
  - {name: concat, type: task, executor: {mode: builtin, target: concat}}
  - {name: cpu_burn, type: task, executor: {mode: builtin, target: cpu_burn}}
  - {name: json_update, type: task, executor: {mode: builtin, target: json_update}}
)";
  return kPackage;
}

std::vector<Sample> Run(const Scenario& scenario, const RunOptions& options) {
  if (scenario.function != "concat" && scenario.function != "json_update" &&
      scenario.function != "cpu_burn") {
    throw Error(ErrorCode::kInvalidArgument, "unknown bench function " + scenario.function);
  }
  platform::Config config;
  config.listen_addr = "127.0.0.1:0";
  config.blob_root = (options.work_dir / "blobs").string();
  config.state_delivery_mode = scenario.mode;
  config.metadata_cache = scenario.metadata_cache;
  config.worker_pool_size = scenario.workers;
  platform::Platform platform(config);
  platform.Start();

  client::ApiClient api(platform.url());
  const auto failures = api.AwaitDeployments(api.Deploy(BenchPackage()));
  if (!failures.empty()) {
    throw Error(ErrorCode::kUnavailable, "bench package failed to deploy: " + failures[0].dump());
  }

  const std::string mode(blob::ToString(scenario.mode));
  const std::string cache = scenario.metadata_cache ? "on" : "off";
  const bool follow = scenario.mode == blob::DeliveryMode::kRedirect;
  std::mt19937_64 rng(scenario.seed);
  std::vector<Sample> samples;
  std::mutex samples_mu;

  for (const uint64_t size : scenario.state_sizes) {
    for (const size_t conc : scenario.concurrency) {
      Cell cell;
      if (scenario.function == "json_update") {
        const json pairs = RandomPairs(size, rng);
        cell.input_pairs = pairs.size();
        cell.source_id = api.CreateObject("bench.rec", std::nullopt, {{"pairs", pairs}}, {})
                             .at("id");
      } else {
        cell.source_id = api.CreateObject("bench.blob", std::nullopt, nullptr,
                                          {{"str", RandomText(size, rng)}})
                             .at("id");
      }

      for (size_t rep = 0; rep < scenario.repetitions; ++rep) {
        std::vector<std::thread> clients;
        for (size_t c = 0; c < conc; ++c) {
          clients.emplace_back([&, c, rep] {
            for (size_t j = 0; j < scenario.invocations_per_client; ++j) {
              const std::string nonce =
                  "r" + std::to_string(rep) + "c" + std::to_string(c) + "j" + std::to_string(j);
              std::string expr;
              size_t expected_bytes = 0;
              if (scenario.function == "concat") {
                expr = cell.source_id + ":concat(append=" + nonce + ")/str";
                expected_bytes = size + nonce.size();
              } else if (scenario.function == "cpu_burn") {
                expr = cell.source_id + ":burn(iters_per_kib=" +
                       std::to_string(scenario.iters_per_kib) + ",label=" + nonce + ")/str";
                expected_bytes = 16;
              } else {
                expr = cell.source_id + ":update(seed=" + nonce + ")";
              }

              Sample s;
              s.function = scenario.function;
              s.size_bytes = size;
              s.concurrency = conc;
              s.mode = mode;
              s.cache = cache;
              s.rep = rep;
              std::string object_id;
              const auto t0 = std::chrono::steady_clock::now();
              try {
                const auto r = api.Invoke(expr, follow);
                object_id = r.object_id;
                if (r.content) {
                  s.ok = r.content->size() == expected_bytes;
                  if (!s.ok) s.error = "unexpected content size";
                } else {
                  s.ok = !r.failed() && r.record.value("status", "") == "COMPLETED" &&
                         r.record["structuredState"]["pairs"].size() == 2 * cell.input_pairs;
                  if (!s.ok) s.error = r.record.dump();
                }
              } catch (const std::exception& e) {
                s.error = e.what();
              }
              s.latency_ms = std::chrono::duration<double, std::milli>(
                                 std::chrono::steady_clock::now() - t0)
                                 .count();
              if (options.cleanup_outputs && !object_id.empty()) {
                if (auto obj = kv::LoadObject(platform.store(), object_id)) {
                  for (const auto& [_, path] : obj->record.unstructured_keys) {
                    std::error_code ec;
                    std::filesystem::remove(platform.blobs().FileFor(path), ec);
                  }
                }
              }
              std::lock_guard lock(samples_mu);
              if (options.on_sample) options.on_sample(s);
              samples.push_back(std::move(s));
            }
          });
        }
        for (auto& t : clients) t.join();
      }
    }
  }
  platform.Stop();
  return samples;
}

}  // namespace oaas::bench
