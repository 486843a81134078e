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

// End-to-end acceptance run. Prints one line per criterion:
//
//   ACCEPTANCE <n>: PASS|FAIL  <measurements>
//
// and exits non-zero if any selected criterion fails. Pass criterion
// numbers as arguments to run a subset.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <httplib.h>

#include "../unit/harness.h"
#include "oaas/bench/bench.h"
#include "oaas/client/api_client.h"
#include "oaas/common/digest.h"
#include "oaas/common/error.h"
#include "oaas/kv/object_record.h"
#include "oaas/model/oai.h"
#include "oaas/platform/platform.h"

namespace oaas::acceptance {
namespace {

using nlohmann::json;
using testing::Harness;
using testing::ReadFile;
using SteadyClock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double SecondsSince(SteadyClock::time_point t0) {
  return std::chrono::duration<double>(SteadyClock::now() - t0).count();
}

std::string Fmt(const char* format, ...) __attribute__((format(printf, 1, 2)));
std::string Fmt(const char* format, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, format);
  std::vsnprintf(buf, sizeof(buf), format, ap);
  va_end(ap);
  return buf;
}

std::filesystem::path ScratchDir(const std::string& tag) {
  return std::filesystem::temp_directory_path() /
         ("oaas-accept-" + tag + "-" + std::to_string(std::random_device{}()));
}

model::OaiRequest Oai(const std::string& expr) { return model::ParseOai(expr); }

void AddExplode(Harness& h) {
  h.builtins.Add("explode", [](const exec::Task&, blob::BlobClient&) -> exec::TaskCompletion {
    throw std::runtime_error("exploded");
  });
}

const char kNodePackage[] = R"(
name: dag
classes:
  - name: node
    stateKeys: [{key: pairs, form: structured}]
    functions:
      - {name: up, function: json_update, outputClass: node}
      - {name: bad, function: explode, outputClass: node}
      - {name: chain, function: chain, outputClass: node}
      - {name: diamond, function: diamond, outputClass: node}
      - {name: broken_diamond, function: broken_diamond, outputClass: node}
functions:
  - {name: json_update, type: task, executor: {mode: builtin, target: json_update}}
  - {name: explode, type: task, executor: {mode: builtin, target: explode}}
  - name: chain
    type: macro
    macro:
      steps:
        - {as: s1, target: $self, function: up, args: {seed: "1"}}
        - {as: s2, target: s1, function: up, args: {seed: "2"}}
        - {as: s3, target: s2, function: up, args: {seed: "3"}}
        - {as: s4, target: s3, function: up, args: {seed: "$arg[seed]"}}
      output: s4
  - name: diamond
    type: macro
    macro:
      steps:
        - {as: s1, target: $self, function: up, args: {seed: "1"}}
        - {as: s2, target: s1, function: up, args: {seed: "2"}}
        - {as: s3, target: s1, function: up, args: {seed: "3"}}
        - {as: s4, target: s2, inputs: [s3], function: up, args: {seed: "4"}}
      output: s4
  - name: broken_diamond
    type: macro
    macro:
      steps:
        - {as: s1, target: $self, function: up, args: {seed: "1"}}
        - {as: s2, target: s1, function: bad}
        - {as: s3, target: s1, function: up, args: {seed: "3"}}
        - {as: s4, target: s2, inputs: [s3], function: up, args: {seed: "4"}}
      output: s4
)";

platform::Config PlatformConfig(const std::filesystem::path& dir) {
  platform::Config c;
  c.listen_addr = "127.0.0.1:0";
  c.blob_root = (dir / "blobs").string();
  return c;
}

void DeployOrThrow(client::ApiClient& api, const std::string& document) {
  const auto failed = api.AwaitDeployments(api.Deploy(document));
  if (!failed.empty()) throw Error(ErrorCode::kUnavailable, "deploy failed: " + failed[0].dump());
}

// 1. Redirect vs relay at 20 MB.
Outcome RedirectAblation() {
  const auto t0 = SteadyClock::now();
  const auto dir = ScratchDir("c1");
  std::map<std::string, bench::CellSummary> by_mode;
  for (const auto mode : {blob::DeliveryMode::kRelay, blob::DeliveryMode::kRedirect}) {
    bench::Scenario sc;
    sc.function = "concat";
    sc.state_sizes = {20ull << 20};
    sc.repetitions = 100;
    sc.mode = mode;
    const auto cells = bench::Summarize(bench::Run(sc, {dir / blob::ToString(mode)}));
    by_mode[std::string(blob::ToString(mode))] = cells.at(0);
  }
  std::filesystem::remove_all(dir);
  const auto& redirect = by_mode["redirect"];
  const auto& relay = by_mode["relay"];
  const double elapsed = SecondsSince(t0);
  const double gain = 1.0 - redirect.mean_ms / relay.mean_ms;
  return {redirect.failed == 0 && relay.failed == 0 && gain >= 0.10 && elapsed < 300,
          Fmt("redirect mean %.1f ms, relay mean %.1f ms, redirect %.1f%% faster, %.0f s",
              redirect.mean_ms, relay.mean_ms, 100 * gain, elapsed)};
}

// 2. Spec reads per invocation with the metadata cache on and off.
Outcome CacheAblation() {
  std::string detail;
  bool pass = true;
  for (const bool cached : {true, false}) {
    Harness h(cached);
    h.Deploy(ReadFile(OAAS_PACKAGES_DIR "/text.yaml"));
    h.Deploy(ReadFile(OAAS_PACKAGES_DIR "/records.yaml"));
    h.CreateObject("example.test1", nullptr, {{"str", "hello"}}, "t1");
    h.CreateObject("records.record", {{"pairs", {{"k", "v"}}}}, {}, "r1");
    const auto spec_reads = [&] {
      return h.store->reads(kv::RecordKind::kClass) + h.store->reads(kv::RecordKind::kFunction);
    };
    const auto once = [&](int i) {
      const std::string expr = i % 2 ? "t1:concat(append=x)" : "r1:update(seed=" +
                                                                   std::to_string(i) + ")";
      h.tm->Invoke(Oai(expr), invoke::InvokeMode::kAsync);
      h.Drain();
    };
    for (int i = 0; i < 4; ++i) once(i);
    uint64_t lo = UINT64_MAX, hi = 0, total = 0;
    constexpr int kRuns = 50;
    for (int i = 0; i < kRuns; ++i) {
      const uint64_t before = spec_reads();
      once(i);
      const uint64_t d = spec_reads() - before;
      lo = std::min(lo, d);
      hi = std::max(hi, d);
      total += d;
    }
    pass = pass && (cached ? hi == 0 : lo >= 2);
    detail += Fmt("cache %s: %.2f reads/invocation (min %llu, max %llu)%s", cached ? "on" : "off",
                  static_cast<double>(total) / kRuns, static_cast<unsigned long long>(lo),
                  static_cast<unsigned long long>(hi), cached ? "; " : "");
  }
  return {pass, detail};
}

// 3. Mean latency is nondecreasing in state size within one std-error.
Outcome SizeMonotonicity() {
  const auto dir = ScratchDir("c3");
  bench::Scenario sc;
  sc.function = "concat";
  sc.state_sizes = {10ull << 10, 100ull << 10, 1ull << 20, 10ull << 20, 20ull << 20};
  sc.repetitions = 100;
  const auto cells = bench::Summarize(bench::Run(sc, {dir}));
  std::filesystem::remove_all(dir);
  bool pass = cells.size() == sc.state_sizes.size();
  std::string detail = "means (ms):";
  for (size_t i = 0; i < cells.size(); ++i) {
    pass = pass && cells[i].failed == 0;
    if (i > 0 && cells[i].mean_ms < cells[i - 1].mean_ms - cells[i - 1].std_error_ms) pass = false;
    detail += Fmt(" %lluB=%.2f+-%.2f", static_cast<unsigned long long>(cells[i].size_bytes),
                  cells[i].mean_ms, cells[i].std_error_ms);
  }
  return {pass, detail};
}

// 4. 160 concurrent json_update invocations on one object.
Outcome ConcurrentUpdates() {
  const auto t0 = SteadyClock::now();
  const auto dir = ScratchDir("c4");
  constexpr int kClients = 160;
  size_t completed = 0, doubled = 0, distinct = 0;
  {
    platform::Platform p(PlatformConfig(dir));
    p.Start();
    client::ApiClient api(p.url());
    DeployOrThrow(api, ReadFile(OAAS_PACKAGES_DIR "/records.yaml"));
    json pairs = json::object();
    for (int i = 0; i < 25; ++i) pairs["key" + std::to_string(i)] = "value" + std::to_string(i);
    api.CreateObject("records.record", "src", {{"pairs", pairs}}, {});

    std::vector<std::string> ids(kClients);
    std::vector<std::thread> clients;
    for (int i = 0; i < kClients; ++i) {
      clients.emplace_back([&, i] {
        try {
          client::ApiClient mine(p.url());
          ids[i] = mine.Invoke("src:update(seed=" + std::to_string(i) + ")").object_id;
        } catch (const std::exception&) {
        }
      });
    }
    for (auto& t : clients) t.join();
    std::set<std::string> unique;
    for (const auto& id : ids) {
      if (id.empty()) continue;
      unique.insert(id);
      const auto obj = kv::LoadObject(p.store(), id);
      if (!obj || obj->record.status != kv::ObjectStatus::kCompleted) continue;
      ++completed;
      if (obj->record.structured_state["pairs"].size() == 2 * pairs.size()) ++doubled;
    }
    distinct = unique.size();
  }
  std::filesystem::remove_all(dir);
  const double elapsed = SecondsSince(t0);
  return {completed == kClients && doubled == kClients && distinct == kClients && elapsed < 120,
          Fmt("%zu completed, %zu distinct, %zu with doubled pairs, %.1f s", completed, distinct,
              doubled, elapsed)};
}

// 5. Random macro DAGs against brute-force topological orders and
// reachability.
struct RandomDag {
  int n = 0;
  std::vector<int> target;               // -1 means $self
  std::vector<std::vector<int>> inputs;  // earlier steps only
  std::vector<bool> bad;

  std::set<std::pair<int, int>> Edges() const {
    std::set<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i) {
      if (target[i] >= 0) e.insert({target[i], i});
      for (int j : inputs[i]) e.insert({j, i});
    }
    return e;
  }

  std::string Package(const std::string& name) const {
    std::ostringstream y;
    y << "name: " << name << R"(
classes:
  - name: node
    stateKeys: [{key: pairs, form: structured}]
    functions:
      - {name: up, function: json_update, outputClass: node}
      - {name: bad, function: explode, outputClass: node}
      - {name: flow, function: flow, outputClass: node}
functions:
  - {name: json_update, type: task, executor: {mode: builtin, target: json_update}}
  - {name: explode, type: task, executor: {mode: builtin, target: explode}}
  - name: flow
    type: macro
    macro:
      steps:
)";
    for (int i = 0; i < n; ++i) {
      y << "        - {as: s" << i << ", target: "
        << (target[i] < 0 ? std::string("$self") : "s" + std::to_string(target[i]));
      if (!inputs[i].empty()) {
        y << ", inputs: [";
        for (size_t k = 0; k < inputs[i].size(); ++k) y << (k ? ", " : "") << "s" << inputs[i][k];
        y << "]";
      }
      y << ", function: " << (bad[i] ? "bad" : "up") << ", args: {seed: \"" << i << "\"}}\n";
    }
    y << "      output: s" << n - 1 << "\n";
    return y.str();
  }
};

RandomDag GenerateDag(std::mt19937_64& rng) {
  RandomDag d;
  d.n = 1 + static_cast<int>(rng() % 6);
  std::bernoulli_distribution self(0.3), input(0.35), fail(0.15);
  for (int i = 0; i < d.n; ++i) {
    const int t = (i == 0 || self(rng)) ? -1 : static_cast<int>(rng() % i);
    d.target.push_back(t);
    std::vector<int> in;
    for (int j = 0; j < i; ++j) {
      if (j != t && input(rng)) in.push_back(j);
    }
    d.inputs.push_back(in);
    d.bad.push_back(fail(rng));
  }
  return d;
}

void AllTopologicalOrders(int n, const std::set<std::pair<int, int>>& edges,
                          std::vector<int>& prefix, std::vector<bool>& used,
                          std::vector<std::vector<int>>& out) {
  if (static_cast<int>(prefix.size()) == n) {
    out.push_back(prefix);
    return;
  }
  for (int v = 0; v < n; ++v) {
    if (used[v]) continue;
    bool ready = true;
    for (const auto& [a, b] : edges) {
      if (b == v && !used[a]) ready = false;
    }
    if (!ready) continue;
    used[v] = true;
    prefix.push_back(v);
    AllTopologicalOrders(n, edges, prefix, used, out);
    prefix.pop_back();
    used[v] = false;
  }
}

Outcome DataflowOracle() {
  std::mt19937_64 rng(20240601);
  Harness h;
  AddExplode(h);
  int violations = 0, with_failures = 0, total_skipped = 0;
  std::string first_violation;
  const auto violate = [&](int i, const std::string& why) {
    if (violations++ == 0) first_violation = "dag " + std::to_string(i) + ": " + why;
  };
  constexpr int kDags = 200;
  for (int i = 0; i < kDags; ++i) {
    const RandomDag dag = GenerateDag(rng);
    const std::string pkg = "g" + std::to_string(i);
    h.Deploy(dag.Package(pkg));
    const std::string self = "src" + std::to_string(i);
    h.CreateObject(pkg + ".node", {{"pairs", {{"k", "v"}}}}, {}, self);
    h.dispatched.clear();
    const auto root = h.tm->Invoke(Oai(self + ":flow()"), invoke::InvokeMode::kAsync).record;
    // Execute in random order among whatever is ready.
    while (!h.pending.empty()) {
      const size_t pick = rng() % h.pending.size();
      std::swap(h.pending[0], h.pending[pick]);
      h.tm->OnCompletion(h.RunNext());
    }

    const auto graph = *h.tm->LoadGraph(*h.Load(root.id).origin->graph_id);
    const auto edges = dag.Edges();
    std::set<std::pair<int, int>> graph_edges;
    for (const auto& [a, b] : graph.edges) {
      graph_edges.insert({std::stoi(a.substr(1)), std::stoi(b.substr(1))});
    }
    if (graph_edges != edges) violate(i, "edge set differs from the declared dependencies");

    // Brute force: skipped iff some strict ancestor is a failing step.
    std::vector<std::set<int>> ancestors(dag.n);
    for (int v = 0; v < dag.n; ++v) {
      for (const auto& [a, b] : edges) {
        if (b == v) {
          ancestors[v].insert(a);
          ancestors[v].insert(ancestors[a].begin(), ancestors[a].end());
        }
      }
    }
    std::set<int> expect_skipped, expect_failed, observed_skipped, observed_failed;
    for (int v = 0; v < dag.n; ++v) {
      const bool upstream_bad = std::any_of(ancestors[v].begin(), ancestors[v].end(),
                                            [&](int a) { return dag.bad[a]; });
      if (upstream_bad) {
        expect_skipped.insert(v);
      } else if (dag.bad[v]) {
        expect_failed.insert(v);
      }
      const auto st = graph.nodes.at("s" + std::to_string(v)).status;
      if (st == invoke::NodeStatus::kSkipped) observed_skipped.insert(v);
      if (st == invoke::NodeStatus::kFailed) observed_failed.insert(v);
      if (!upstream_bad && !dag.bad[v] && st != invoke::NodeStatus::kCompleted) {
        violate(i, "s" + std::to_string(v) + " did not complete");
      }
    }
    if (observed_skipped != expect_skipped) violate(i, "skipped set differs from reachability");
    if (observed_failed != expect_failed) violate(i, "failed set differs");
    if (!expect_failed.empty()) ++with_failures;
    total_skipped += static_cast<int>(expect_skipped.size());

    std::vector<int> order;
    for (const auto& t : h.dispatched) {
      order.push_back(std::stoi(h.Load(t.output_object.id).origin->node->substr(1)));
    }
    std::vector<std::vector<int>> topo;
    std::vector<int> prefix;
    std::vector<bool> used(dag.n, false);
    AllTopologicalOrders(dag.n, edges, prefix, used, topo);
    std::set<std::vector<int>> allowed;
    for (const auto& t : topo) {
      std::vector<int> kept;
      for (int v : t) {
        if (!expect_skipped.contains(v)) kept.push_back(v);
      }
      allowed.insert(kept);
    }
    if (!allowed.contains(order)) violate(i, "dispatch order is not topological");
  }
  return {violations == 0,
          Fmt("%d DAGs, %d with failing steps, %d skipped nodes, %d violations", kDags,
              with_failures, total_skipped, violations) +
              (first_violation.empty() ? "" : " (" + first_violation + ")")};
}

std::map<std::string, std::string> DumpRecords(const kv::MetadataStore& store) {
  std::map<std::string, std::string> out;
  for (const auto kind : {kv::RecordKind::kObject, kv::RecordKind::kGraph}) {
    for (const auto& key : store.ListKeys(kind)) {
      out[std::string(kv::ToString(kind)) + "/" + key] = store.Get(kind, key)->value.dump();
    }
  }
  return out;
}

// 6. Redelivering every completion changes nothing.
Outcome Idempotence() {
  const auto run = [](int deliveries, size_t* dispatches) {
    Harness h;
    h.clock->Set(1'700'000'000'000);
    AddExplode(h);
    h.Deploy(kNodePackage);
    h.CreateObject("dag.node", {{"pairs", {{"k", "v"}}}}, {}, "n1");
    h.tm->Invoke(Oai("n1:diamond()"), invoke::InvokeMode::kAsync);
    while (!h.pending.empty()) {
      const auto c = h.RunNext();
      for (int i = 0; i < deliveries; ++i) h.tm->OnCompletion(c);
    }
    *dispatches = h.dispatched.size();
    return DumpRecords(*h.store);
  };
  size_t once_dispatches = 0, many_dispatches = 0;
  const auto once = run(1, &once_dispatches);
  const auto many = run(4, &many_dispatches);
  size_t differing = 0;
  for (const auto& [k, v] : once) {
    auto it = many.find(k);
    if (it == many.end() || it->second != v) ++differing;
  }
  differing += many.size() > once.size() ? many.size() - once.size() : 0;
  return {differing == 0 && once_dispatches == many_dispatches && once_dispatches == 4,
          Fmt("%zu records compared, %zu differ; dispatches %zu vs %zu", once.size(), differing,
              once_dispatches, many_dispatches)};
}

// 7. Crash all task managers after each completion prefix of a 4-step chain.
Outcome StatelessRecovery() {
  const auto final_state = [](int crash_after) -> std::optional<json> {
    Harness h;
    AddExplode(h);
    h.Deploy(kNodePackage);
    h.CreateObject("dag.node", {{"pairs", {{"k", "v"}}}}, {}, "n1");
    const auto root = h.tm->Invoke(Oai("n1:chain(seed=7)"), invoke::InvokeMode::kAsync).record;
    std::vector<exec::TaskCompletion> delivered;
    if (crash_after >= 0) {
      for (int i = 0; i < crash_after; ++i) {
        delivered.push_back(h.RunNext());
        h.tm->OnCompletion(delivered.back());
      }
      h.NewTaskManager();
      for (const auto& c : delivered) h.tm->OnCompletion(c);
    }
    h.Drain();
    const auto out = h.Load(root.id);
    const auto graph = h.tm->LoadGraph(*out.origin->graph_id);
    if (out.status != kv::ObjectStatus::kCompleted || !graph) return std::nullopt;
    for (const auto& [_, node] : graph->nodes) {
      if (node.status != invoke::NodeStatus::kCompleted) return std::nullopt;
    }
    return std::optional<json>(out.structured_state);
  };
  const auto reference = final_state(-1);
  int ok = 0;
  std::string detail;
  for (int k = 0; k < 4; ++k) {
    const auto got = final_state(k);
    const bool good = got && reference && *got == *reference;
    ok += good;
    detail += Fmt("%scrash after %d: %s", k ? ", " : "", k, good ? "completed" : "WRONG");
  }
  return {ok == 4 && reference.has_value(), detail};
}

// 8. Perturbed presigned URLs are refused.
Outcome CapabilityConfinement() {
  const auto dir = ScratchDir("c8");
  int refused = 0, total = 0;
  bool baseline = false, intact = false;
  std::map<int, int> per_class;
  {
    auto config = PlatformConfig(dir);
    config.task_manager_instances = 1;
    platform::Platform p(config);
    p.Start();
    client::ApiClient api(p.url());
    DeployOrThrow(api, ReadFile(OAAS_PACKAGES_DIR "/text.yaml"));
    api.CreateObject("example.test1", "victim", nullptr, {{"str", "secret bytes"}});
    api.CreateObject("example.test1", "other", nullptr, {{"str", "other bytes"}});
    const BlobPath victim = kv::LoadObject(p.store(), "victim")->record.unstructured_keys.at("str");
    const BlobPath other = kv::LoadObject(p.store(), "other")->record.unstructured_keys.at("str");
    const auto& signer = p.blobs().signer();
    const int64_t now = p.blobs().clock().NowSeconds();
    const blob::PresignedUrl valid = signer.Presign(victim, blob::HttpMethod::kGet, 600, now);

    httplib::Client cli(p.url());
    cli.set_url_encode(false);
    const auto get = cli.Get(valid.Target());
    baseline = get && get->status == 200 && get->body == "secret bytes";

    std::mt19937_64 rng(8);
    static constexpr char kAlnum[] =
        "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
    const auto mutate = [&](std::string s) {
      const size_t at = rng() % s.size();
      char c = s[at];
      while (c == s[at]) c = kAlnum[rng() % (sizeof(kAlnum) - 1)];
      s[at] = c;
      return s;
    };
    for (int i = 0; i < 1000; ++i) {
      blob::PresignedUrl url = valid;
      bool use_put = false;
      const int cls = i % 4;
      switch (cls) {
        case 0: {  // path
          const auto which = rng() % 4;
          if (which == 3) {
            url.path = other;
          } else {
            std::string b = victim.bucket(), o = victim.object_id(), k = victim.key();
            (which == 0 ? b : which == 1 ? o : k) = mutate(which == 0 ? b : which == 1 ? o : k);
            url.path = BlobPath(b, o, k);
          }
          break;
        }
        case 1: {  // method
          const auto which = rng() % 3;
          if (which != 1) url.method = blob::HttpMethod::kPut;
          use_put = which != 2;
          break;
        }
        case 2: {  // expiry
          if (rng() % 2) {
            int64_t delta = 0;
            while (delta == 0) delta = static_cast<int64_t>(rng() % 2'000'001) - 1'000'000;
            url.expires_at += delta;
          } else {
            url = signer.Presign(victim, blob::HttpMethod::kGet, 1,
                                 now - 2 - static_cast<int64_t>(rng() % 100'000));
          }
          break;
        }
        default: {  // signature bits
          if (rng() % 10 == 0) {
            url.signature = url.signature.substr(0, rng() % url.signature.size());
          } else {
            const size_t at = rng() % url.signature.size();
            const int nibble = std::stoi(url.signature.substr(at, 1), nullptr, 16) ^
                               (1 << (rng() % 4));
            url.signature[at] = "0123456789abcdef"[nibble];
          }
        }
      }
      const auto res = use_put ? cli.Put(url.Target(), "tampered", "application/octet-stream")
                               : cli.Get(url.Target());
      ++total;
      if (res && res->status == 403) {
        ++refused;
        ++per_class[cls];
      }
    }
    intact = p.blobs().ReadTrusted(victim) == "secret bytes" &&
             p.blobs().ReadTrusted(other) == "other bytes";
  }
  std::filesystem::remove_all(dir);
  return {baseline && intact && refused == total && total == 1000,
          Fmt("%d/%d refused with 403 (path %d, method %d, expiry %d, signature %d); valid URL %s",
              refused, total, per_class[0], per_class[1], per_class[2], per_class[3],
              baseline ? "served" : "NOT served")};
}

// 9. COMPLETED objects never change under random platform operations.
Outcome Immutability() {
  Harness h;
  AddExplode(h);
  h.Deploy(ReadFile(OAAS_PACKAGES_DIR "/text.yaml"));
  h.Deploy(kNodePackage);
  std::vector<std::string> hook_violations;
  h.store->SetWriteHook([&](const kv::Record* before, const kv::Record& after) {
    if (!before || before->kind != kv::RecordKind::kObject) return;
    if (before->value["status"] != "COMPLETED") return;
    if (before->value["structuredState"] != after.value["structuredState"] ||
        before->value["unstructuredKeys"] != after.value["unstructuredKeys"] ||
        after.value["status"] != "COMPLETED") {
      hook_violations.push_back(after.key);
    }
  });
  h.CreateObject("example.test1", nullptr, {{"str", "seed text"}}, "t0");
  h.CreateObject("dag.node", {{"pairs", {{"k", "v"}}}}, {}, "n0");

  std::mt19937_64 rng(9);
  std::map<std::string, std::string> digests;  // blob path -> sha256 at completion
  size_t digest_violations = 0;
  std::vector<exec::TaskCompletion> seen;
  std::vector<std::string> put_urls;
  std::map<int, int> op_counts;
  const auto pick = [&](const std::vector<std::string>& v) { return v[rng() % v.size()]; };
  const auto audit = [&] {
    for (const auto& id : h.store->ListKeys(kv::RecordKind::kObject)) {
      const auto rec = h.Load(id);
      if (rec.status != kv::ObjectStatus::kCompleted) continue;
      for (const auto& [key, path] : rec.unstructured_keys) {
        const std::string d = Sha256Hex(h.blobs->ReadTrusted(path));
        auto [it, fresh] = digests.emplace(path.ToString(), d);
        if (!fresh && it->second != d) ++digest_violations;
      }
    }
  };

  constexpr int kOps = 500;
  for (int i = 0; i < kOps; ++i) {
    const auto ids = h.store->ListKeys(kv::RecordKind::kObject);
    const std::string id = pick(ids);
    const bool text = h.Load(id).class_name == "example.test1";
    const int op = static_cast<int>(rng() % 11);
    ++op_counts[op];
    try {
      switch (op) {
        case 0:
        case 1: {
          static const char* kNodeFns[] = {"up(seed=1)", "chain(seed=2)", "diamond()",
                                            "broken_diamond()", "bad()"};
          const std::string fn = text ? "concat(append=" + std::to_string(i) + ")"
                                      : kNodeFns[rng() % 5];
          h.tm->Invoke(Oai(id + ":" + fn), invoke::InvokeMode::kAsync);
          for (const auto& t : h.dispatched) {
            for (const auto& [_, u] : t.output_object.urls) put_urls.push_back(u);
          }
          break;
        }
        case 2:
        case 3:
          if (!h.pending.empty()) {
            std::swap(h.pending[0], h.pending[rng() % h.pending.size()]);
            seen.push_back(h.RunNext());
            h.tm->OnCompletion(seen.back());
          }
          break;
        case 4:
          if (!seen.empty()) h.tm->OnCompletion(seen[rng() % seen.size()]);
          break;
        case 5: {
          if (rng() % 2) {
            auto res = h.controller->InstantiateObject("example.test1", nullptr, {"str"});
            put_urls.push_back(res.upload_urls.at("str"));
            h.client->Put(res.upload_urls.at("str"), "fresh " + std::to_string(i));
            if (rng() % 3) h.controller->ConfirmUpload(res.record.id);
          } else {
            h.CreateObject("dag.node", {{"pairs", {{"k" + std::to_string(i), "v"}}}});
          }
          break;
        }
        case 6:
          h.controller->ConfirmUpload(id);
          break;
        case 7:
          if (!put_urls.empty()) h.client->Put(put_urls[rng() % put_urls.size()], "replayed");
          break;
        case 8:
          h.NewTaskManager();
          break;
        case 9:
          h.tm->GetStatus(id);
          if (text) h.tm->Invoke(Oai(id + "/str"), invoke::InvokeMode::kAsync);
          break;
        default:
          if (!h.pending.empty()) {
            const auto task = h.pending.front();
            h.pending.pop_front();
            h.tm->OnCompletion(exec::TaskCompletion::Failure(task, "connection reset", true));
          }
      }
    } catch (const Error&) {
      // Refusals (pending sources, sealed blobs, double confirms) are fine.
    }
    h.clock->Advance(37);
    audit();
  }
  size_t completed = 0;
  for (const auto& id : h.store->ListKeys(kv::RecordKind::kObject)) {
    completed += h.Load(id).status == kv::ObjectStatus::kCompleted;
  }
  return {hook_violations.empty() && digest_violations == 0 && completed > 10,
          Fmt("%d operations, %zu completed objects watched, %zu blob digests, %zu record "
              "violations, %zu digest violations",
              kOps, completed, digests.size(), hook_violations.size(), digest_violations)};
}

// 10. The case-study package end to end over HTTP.
Outcome CaseStudy() {
  const auto dir = ScratchDir("c10");
  bool pass = false;
  std::string detail;
  {
    platform::Platform p(PlatformConfig(dir));
    p.Start();
    client::ApiClient api(p.url());
    DeployOrThrow(api, ReadFile(OAAS_PACKAGES_DIR "/casestudy.yaml"));
    std::mt19937_64 rng(10);
    std::string video(96 << 10, '\0');
    for (auto& c : video) c = static_cast<char>(rng());
    api.CreateObject("casestudy.video", "clip", nullptr, {{"data", video}});

    std::mutex mu;
    std::vector<std::pair<BlobPath, blob::HttpMethod>> accesses;
    p.blobs().SetAccessObserver([&](const BlobPath& path, blob::HttpMethod m) {
      std::lock_guard lock(mu);
      accesses.emplace_back(path, m);
    });
    const auto r = api.Invoke("clip:pipeline(iters=4)");
    p.blobs().SetAccessObserver(nullptr);

    const json& pairs = r.record["structuredState"]["pairs"];
    const bool report = r.status == 200 && r.record.value("status", "") == "COMPLETED" &&
                        r.record.value("class", "") == "casestudy.report" && pairs.size() == 6 &&
                        pairs.contains("seg0") && pairs.contains("seg1") && pairs.contains("seg2");
    const auto graph = p.task_manager(0).LoadGraph(
        *kv::LoadObject(p.store(), r.object_id)->record.origin->graph_id);
    std::set<std::string> node_outputs;
    size_t nodes_done = 0;
    for (const auto& [_, n] : graph->nodes) {
      node_outputs.insert(n.output_object_id);
      nodes_done += n.status == invoke::NodeStatus::kCompleted;
    }
    // Every blob touch went through a verified presigned URL; writes landed
    // only on step outputs and reads only on the video and the segments.
    size_t gets = 0, puts = 0, stray = 0;
    for (const auto& [path, m] : accesses) {
      if (m == blob::HttpMethod::kPut) {
        ++puts;
        if (!node_outputs.contains(path.object_id())) ++stray;
      } else {
        ++gets;
        if (path.object_id() != "clip" && !node_outputs.contains(path.object_id())) ++stray;
      }
    }
    pass = report && nodes_done == 7 && gets == 6 && puts == 6 && stray == 0;
    detail = Fmt("report %s with %zu pairs, %zu/7 steps completed, %zu presigned reads, %zu "
                 "presigned writes, %zu outside the dataflow",
                 r.record.value("status", "?").c_str(), pairs.size(), nodes_done, gets, puts,
                 stray);
  }
  std::filesystem::remove_all(dir);
  return {pass, detail};
}

}  // namespace
}  // namespace oaas::acceptance

int main(int argc, char** argv) {
  using namespace oaas::acceptance;
  CLI::App app{"Acceptance criteria"};
  std::vector<int> selected;
  app.add_option("criteria", selected, "Criterion numbers to run (default: all)")
      ->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);
  if (selected.empty()) selected = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};

  const std::map<int, std::function<Outcome()>> criteria = {
      {1, RedirectAblation},  {2, CacheAblation},      {3, SizeMonotonicity},
      {4, ConcurrentUpdates}, {5, DataflowOracle},     {6, Idempotence},
      {7, StatelessRecovery}, {8, CapabilityConfinement}, {9, Immutability},
      {10, CaseStudy}};
  int failures = 0;
  for (const int n : selected) {
    Outcome o;
    try {
      o = criteria.at(n)();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << "ACCEPTANCE " << n << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail
              << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
