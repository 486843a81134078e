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

// oaas: operator CLI. Exit codes: 0 success, 1 usage error, 2 platform
// error, 3 invocation failed.

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "oaas/bench/bench.h"
#include "oaas/client/api_client.h"
#include "oaas/common/error.h"
#include "oaas/platform/platform.h"

namespace {

using nlohmann::json;
using oaas::Error;
using oaas::ErrorCode;

constexpr int kUsage = 1;
constexpr int kPlatform = 2;
constexpr int kInvocationFailed = 3;

std::atomic<bool> g_stop{false};

std::string ReadFileOrThrow(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFileOrThrow(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
}

// "10KB" -> 10240. Accepts B, KB, MB, GB (binary multiples).
uint64_t ParseSize(const std::string& text) {
  size_t used = 0;
  uint64_t n = 0;
  try {
    n = std::stoull(text, &used);
  } catch (const std::exception&) {
    throw CLI::ValidationError("size", "not a size: " + text);
  }
  std::string unit = text.substr(used);
  for (auto& c : unit) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (unit.empty() || unit == "B") return n;
  if (unit == "KB" || unit == "K") return n << 10;
  if (unit == "MB" || unit == "M") return n << 20;
  if (unit == "GB" || unit == "G") return n << 30;
  throw CLI::ValidationError("size", "unknown unit in " + text);
}

int Serve(const std::string& config_path) {
  const auto config = config_path.empty() ? oaas::platform::Config{}
                                          : oaas::platform::Config::LoadFile(config_path);
  oaas::platform::Platform platform(config);
  platform.Start();
  std::cerr << "oaas listening on " << platform.url() << "\n";
  std::signal(SIGINT, [](int) { g_stop = true; });
  std::signal(SIGTERM, [](int) { g_stop = true; });
  while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(100));
  platform.Stop();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Object-as-a-Service platform and tooling"};
  app.require_subcommand(1);
  std::string server = std::getenv("OAAS_SERVER") ? std::getenv("OAAS_SERVER")
                                                  : "http://127.0.0.1:8080";
  app.add_option("--server", server, "Gateway base URL (env OAAS_SERVER)");

  std::string package_file;
  auto* deploy = app.add_subcommand("deploy", "Register a package and wait for its functions");
  deploy->add_option("package", package_file, "Package YAML or JSON")->required();

  auto* object = app.add_subcommand("object", "Object lifecycle");
  object->require_subcommand(1);
  auto* create = object->add_subcommand("create", "Create an object and upload its blobs");
  std::string class_name, object_id, state_file;
  std::vector<std::string> uploads;
  create->add_option("class", class_name, "Qualified class name")->required();
  create->add_option("--id", object_id, "Object id (generated when absent)");
  create->add_option("--state-json", state_file, "File with the structured state");
  create->add_option("--upload", uploads, "KEY=FILE, repeatable");

  std::string expr;
  bool async = false;
  std::string out_file;
  auto* invoke = app.add_subcommand("invoke", "Evaluate an object access expression");
  invoke->add_option("oai", expr, "e.g. o1:concat(append=abc)/str")->required();
  invoke->add_flag("--async", async, "Return the prospective object immediately");
  invoke->add_option("-o,--out", out_file, "Write content to FILE instead of stdout");

  std::string status_id;
  auto* status = app.add_subcommand("status", "Show an object's status");
  status->add_option("object", status_id)->required();

  std::string get_ref;
  auto* get = app.add_subcommand("get", "Download an object's state blob");
  get->add_option("ref", get_ref, "objectId/key")->required();
  get->add_option("-o,--out", out_file, "Output file")->required();

  std::string config_path;
  auto* serve = app.add_subcommand("serve", "Run the whole platform in this process");
  serve->add_option("--config", config_path, "JSON config file");

  oaas::bench::Scenario scenario;
  std::vector<std::string> sizes = {"10KB"};
  std::string bench_mode = "redirect", bench_cache = "on", bench_out, work_dir;
  auto* bench = app.add_subcommand("bench", "Latency sweep against an in-process platform");
  bench->add_option("--function", scenario.function)
      ->check(CLI::IsMember({"concat", "json_update", "cpu_burn"}));
  bench->add_option("--sizes", sizes, "State sizes, e.g. 10KB,1MB")->delimiter(',');
  bench->add_option("--concurrency", scenario.concurrency, "Client counts, e.g. 1,10")
      ->delimiter(',');
  bench->add_option("--mode", bench_mode)->check(CLI::IsMember({"redirect", "relay"}));
  bench->add_option("--cache", bench_cache, "Metadata cache")->check(CLI::IsMember({"on", "off"}));
  bench->add_option("--reps", scenario.repetitions)->check(CLI::PositiveNumber);
  bench->add_option("--per-client", scenario.invocations_per_client)->check(CLI::PositiveNumber);
  bench->add_option("--workers", scenario.workers)->check(CLI::PositiveNumber);
  bench->add_option("--iters-per-kib", scenario.iters_per_kib);
  bench->add_option("--seed", scenario.seed);
  bench->add_option("--out", bench_out, "CSV file (default stdout)");
  bench->add_option("--work-dir", work_dir, "Scratch directory (default: temp)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  try {
    oaas::client::ApiClient api(server);
    if (*deploy) {
      const json reg = api.Deploy(ReadFileOrThrow(package_file));
      const auto failed = api.AwaitDeployments(reg);
      std::cout << reg.dump(2) << "\n";
      for (const auto& f : failed) std::cerr << "deployment failed: " << f.dump() << "\n";
      return failed.empty() ? 0 : kPlatform;
    }
    if (*create) {
      std::map<std::string, std::string> blobs;
      for (const auto& u : uploads) {
        const auto eq = u.find('=');
        if (eq == std::string::npos || eq == 0) {
          std::cerr << "--upload expects KEY=FILE, got " << u << "\n";
          return kUsage;
        }
        blobs[u.substr(0, eq)] = ReadFileOrThrow(u.substr(eq + 1));
      }
      const json state = state_file.empty() ? json(nullptr) : json::parse(ReadFileOrThrow(state_file));
      const std::optional<std::string> id =
          object_id.empty() ? std::nullopt : std::optional<std::string>(object_id);
      std::cout << api.CreateObject(class_name, id, state, blobs).dump(2) << "\n";
      return 0;
    }
    if (*invoke) {
      if (async) {
        std::cout << api.InvokeAsync(expr).dump(2) << "\n";
        return 0;
      }
      const auto r = api.Invoke(expr, true);
      if (r.content) {
        if (out_file.empty()) {
          std::cout << *r.content;
        } else {
          WriteFileOrThrow(out_file, *r.content);
        }
        return 0;
      }
      std::cout << r.record.dump(2) << "\n";
      return r.failed() ? kInvocationFailed : 0;
    }
    if (*status) {
      const json st = api.Status(status_id);
      std::cout << st.dump(2) << "\n";
      return st.value("status", "") == "FAILED" ? kInvocationFailed : 0;
    }
    if (*get) {
      const auto slash = get_ref.find('/');
      if (slash == std::string::npos || slash == 0 || slash + 1 == get_ref.size()) {
        std::cerr << "get expects objectId/key\n";
        return kUsage;
      }
      const auto r = api.Invoke(get_ref, true);
      if (!r.content) throw Error(ErrorCode::kInternal, "no content returned");
      WriteFileOrThrow(out_file, *r.content);
      return 0;
    }
    if (*serve) return Serve(config_path);
    if (*bench) {
      scenario.state_sizes.clear();
      for (const auto& s : sizes) scenario.state_sizes.push_back(ParseSize(s));
      scenario.mode = oaas::blob::DeliveryModeFromString(bench_mode);
      scenario.metadata_cache = bench_cache == "on";
      oaas::bench::RunOptions opts;
      opts.work_dir = work_dir.empty()
                          ? std::filesystem::temp_directory_path() /
                                ("oaas-bench-" + std::to_string(std::random_device{}()))
                          : std::filesystem::path(work_dir);
      const auto samples = oaas::bench::Run(scenario, opts);
      if (work_dir.empty()) std::filesystem::remove_all(opts.work_dir);
      if (bench_out.empty()) {
        oaas::bench::WriteCsv(std::cout, samples);
      } else {
        std::ofstream out(bench_out);
        oaas::bench::WriteCsv(out, samples);
      }
      std::cerr << oaas::bench::FormatSummary(oaas::bench::Summarize(samples));
      return 0;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << e.ToJson().dump() << "\n";
    return kPlatform;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kPlatform;
  }
  return kUsage;
}
