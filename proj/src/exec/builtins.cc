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

#include "oaas/exec/builtins.h"

#include <charconv>
#include <random>

#include "oaas/common/error.h"

namespace oaas::exec {

using nlohmann::json;

namespace {

const std::string& RequireArg(const Task& task, const std::string& name) {
  auto it = task.args.find(name);
  if (it == task.args.end()) {
    throw Error(ErrorCode::kInvalidArgument, "missing argument '" + name + "'");
  }
  return it->second;
}

uint64_t ParseCount(const std::string& name, const std::string& value) {
  uint64_t n = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), n);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "argument '" + name + "' is not a non-negative integer");
  }
  return n;
}

const std::string& RequireUrl(const TaskObject& obj, const std::string& key,
                              std::string_view role) {
  auto it = obj.urls.find(key);
  if (it == obj.urls.end()) {
    throw Error(ErrorCode::kUnknownStateKey,
                std::string(role) + " object has no state '" + key + "'");
  }
  return it->second;
}

std::string RandomToken(std::mt19937_64& rng, size_t len) {
  static constexpr char kAlphabet[] =
      "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
  std::string s(len, ' ');
  for (auto& c : s) c = kAlphabet[rng() % (sizeof(kAlphabet) - 1)];
  return s;
}

std::mt19937_64 SeededRng(const Task& task) {
  auto it = task.args.find("seed");
  if (it == task.args.end()) return std::mt19937_64(std::random_device{}());
  std::seed_seq seq(it->second.begin(), it->second.end());
  return std::mt19937_64(seq);
}

std::string Hex64(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

TaskCompletion BuiltinConcat(const Task& task, blob::BlobClient& blobs) {
  const std::string& append = RequireArg(task, "append");
  const std::string& in = RequireUrl(task.main_object, "str", "main");
  const std::string& out = RequireUrl(task.output_object, "str", "output");
  std::string content = blobs.Get(in);
  content += append;
  blobs.Put(out, content);
  return TaskCompletion::Success(task, std::nullopt);
}

TaskCompletion BuiltinJsonUpdate(const Task& task, blob::BlobClient&) {
  const json& state = task.main_object.structured_state;
  if (!state.contains("pairs") || !state["pairs"].is_object()) {
    throw Error(ErrorCode::kInvalidArgument, "main object has no 'pairs' object");
  }
  json pairs = state["pairs"];
  for (const auto& input : task.inputs) {
    const json& p = input.structured_state.contains("pairs")
                        ? input.structured_state["pairs"]
                        : json();
    if (p.is_object()) pairs.update(p);
  }
  auto rng = SeededRng(task);
  const size_t target = pairs.size() * 2;
  while (pairs.size() < target) {
    std::string key = RandomToken(rng, 10);
    std::string value = RandomToken(rng, 40);
    if (!pairs.contains(key)) pairs[std::move(key)] = std::move(value);
  }
  return TaskCompletion::Success(task, json{{"pairs", std::move(pairs)}});
}

uint64_t BurnChecksum(std::string_view data, uint64_t iterations) {
  uint64_t h = 0xcbf29ce484222325ull;
  if (data.empty()) return h;
  const size_t blocks = (data.size() + 1023) / 1024;
  for (uint64_t i = 0; i < iterations; ++i) {
    const size_t begin = (i % blocks) * 1024;
    const size_t end = std::min(begin + 1024, data.size());
    for (size_t b = begin; b < end; ++b) {
      h = (h ^ static_cast<unsigned char>(data[b])) * 0x100000001b3ull;
    }
    h ^= i;
  }
  return h;
}

TaskCompletion BuiltinCpuBurn(const Task& task, blob::BlobClient& blobs) {
  const uint64_t per_kib = ParseCount("iters_per_kib", RequireArg(task, "iters_per_kib"));
  std::string key;
  if (auto it = task.args.find("key"); it != task.args.end()) {
    key = it->second;
  } else if (!task.main_object.urls.empty()) {
    key = task.main_object.urls.begin()->first;
  } else {
    throw Error(ErrorCode::kUnknownStateKey, "main object has no unstructured state");
  }
  std::string data = blobs.Get(RequireUrl(task.main_object, key, "main"));

  if (task.args.contains("parts")) {
    const uint64_t parts = ParseCount("parts", task.args.at("parts"));
    const uint64_t part = ParseCount("part", RequireArg(task, "part"));
    if (parts == 0 || part >= parts) {
      throw Error(ErrorCode::kInvalidArgument, "part must be below parts");
    }
    const size_t begin = data.size() * part / parts;
    const size_t end = data.size() * (part + 1) / parts;
    data = data.substr(begin, end - begin);
  }

  const uint64_t iterations = per_kib * ((data.size() + 1023) / 1024);
  const std::string checksum = Hex64(BurnChecksum(data, iterations));
  for (const auto& [_, url] : task.output_object.urls) blobs.Put(url, checksum);

  auto label = task.args.find("label");
  json out = {{"checksum", checksum},
              {"iterations", iterations},
              {"pairs", {{label == task.args.end() ? "checksum" : label->second, checksum}}}};
  return TaskCompletion::Success(task, std::move(out));
}

BuiltinRegistry BuiltinRegistry::Default() {
  BuiltinRegistry r;
  r.Add("concat", BuiltinConcat);
  r.Add("json_update", BuiltinJsonUpdate);
  r.Add("cpu_burn", BuiltinCpuBurn);
  return r;
}

void BuiltinRegistry::Add(std::string name, BuiltinFn fn) {
  fns_[std::move(name)] = std::move(fn);
}

const BuiltinFn* BuiltinRegistry::Find(std::string_view name) const {
  auto it = fns_.find(name);
  return it == fns_.end() ? nullptr : &it->second;
}

std::vector<std::string> BuiltinRegistry::Names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : fns_) out.push_back(name);
  return out;
}

}  // namespace oaas::exec
