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

#include "oaas/invoke/task_manager.h"

#include "oaas/common/error.h"
#include "oaas/common/ids.h"
#include "oaas/model/access.h"
#include "oaas/model/macro.h"
#include "oaas/model/resolve.h"

namespace oaas::invoke {

using nlohmann::json;
using kv::ObjectRecord;
using kv::ObjectStatus;
using kv::RecordKind;

TaskManager::TaskManager(Options options, std::shared_ptr<kv::MetadataStore> store,
                         std::shared_ptr<kv::SpecCache> specs,
                         std::shared_ptr<blob::StorageAdapter> storage,
                         TaskDispatcher dispatcher, std::shared_ptr<Clock> clock)
    : options_(std::move(options)),
      store_(std::move(store)),
      specs_(std::move(specs)),
      registry_(specs_),
      storage_(std::move(storage)),
      dispatcher_(std::move(dispatcher)),
      clock_(std::move(clock)) {
  if (!options_.id_generator) options_.id_generator = NewUuid;
}

std::string TaskManager::NextId() { return options_.id_generator(); }

void TaskManager::Notify() {
  std::lock_guard lock(wait_mu_);
  wait_cv_.notify_all();
}

ObjectRecord TaskManager::LoadCompleted(const std::string& id) const {
  auto obj = kv::LoadObject(*store_, id);
  if (!obj) throw Error(ErrorCode::kUnknownObject, "unknown object '" + id + "'");
  if (obj->record.status != ObjectStatus::kCompleted) {
    throw Error(ErrorCode::kSourceNotCompleted,
                "object '" + id + "' is " + std::string(ToString(obj->record.status)),
                {{"status", ToString(obj->record.status)}});
  }
  return obj->record;
}

model::ResolvedBinding TaskManager::ResolveBinding(const std::string& class_name,
                                                   const std::string& binding,
                                                   const std::string& caller_package) const {
  const auto cls = model::ResolveClass(class_name, registry_);
  const auto* b = cls.FindBinding(binding);
  if (!b) {
    throw Error(ErrorCode::kUnknownFunction,
                "class '" + class_name + "' has no function '" + binding + "'");
  }
  if (!model::CheckAccess(model::ContextFor(caller_package, *b), cls, binding)) {
    throw Error(ErrorCode::kAccessDenied,
                "function '" + binding + "' of class '" + class_name + "' is internal");
  }
  return *b;
}

ObjectRecord TaskManager::NewOutputObject(const std::string& output_class,
                                          kv::ObjectOrigin origin) {
  const auto cls = model::ResolveClass(output_class, registry_);
  ObjectRecord rec;
  rec.id = NextId();
  rec.class_name = output_class;
  rec.class_version = registry_.ClassVersion(output_class);
  rec.status = ObjectStatus::kPending;
  for (const auto& k : cls.state_keys) {
    if (k.spec.form == model::StateForm::kUnstructured) {
      rec.unstructured_keys.emplace(k.spec.key, BlobPath(*k.spec.provider, rec.id, k.spec.key));
    }
  }
  rec.origin = std::move(origin);
  rec.created_at = rec.updated_at = clock_->NowMillis();
  return rec;
}

exec::Task TaskManager::BuildTask(const ObjectRecord& output, const std::string& function,
                                  int attempt) const {
  exec::Task task;
  task.task_id = exec::MakeTaskId(output.id, attempt);
  task.function = function;
  task.args = output.origin->args;
  task.issued_at = clock_->NowMillis();
  const auto& sources = output.origin->source_object_ids;
  for (size_t i = 0; i < sources.size(); ++i) {
    const ObjectRecord src = LoadCompleted(sources[i]);
    exec::TaskObject obj{src.id, src.structured_state, {}};
    for (const auto& [key, path] : src.unstructured_keys) {
      obj.urls[key] = storage_->PresignUrl(path, blob::HttpMethod::kGet,
                                           options_.url_ttl_seconds);
    }
    if (i == 0) {
      task.main_object = std::move(obj);
    } else {
      task.inputs.push_back(std::move(obj));
    }
  }
  task.output_object.id = output.id;
  for (const auto& [key, path] : output.unstructured_keys) {
    task.output_object.urls[key] =
        storage_->PresignUrl(path, blob::HttpMethod::kPut, options_.url_ttl_seconds);
  }
  return task;
}

void TaskManager::Send(const exec::Task& task) {
  exec::TaskEnvelope env;
  env.id = task.task_id;
  env.source = options_.instance_id;
  env.data = task;
  dispatcher_(env);
}

void TaskManager::MarkRunning(const std::string& object_id) {
  for (;;) {
    auto obj = kv::LoadObject(*store_, object_id);
    if (!obj || obj->record.status != ObjectStatus::kPending) return;
    obj->record.status = ObjectStatus::kRunning;
    obj->record.updated_at = clock_->NowMillis();
    try {
      store_->Put(RecordKind::kObject, object_id, obj->record.ToJson(), obj->version);
      return;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kVersionConflict) throw;
    }
  }
}

void TaskManager::FailObject(const std::string& object_id, const std::string& cause) {
  for (;;) {
    auto obj = kv::LoadObject(*store_, object_id);
    if (!obj || kv::IsTerminal(obj->record.status)) return;
    obj->record.status = ObjectStatus::kFailed;
    obj->record.failure_cause = cause;
    obj->record.updated_at = clock_->NowMillis();
    try {
      store_->Put(RecordKind::kObject, object_id, obj->record.ToJson(), obj->version);
      Notify();
      return;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kVersionConflict) throw;
    }
  }
}

exec::Task TaskManager::GenerateTask(const ObjectRecord& main,
                                     const std::vector<ObjectRecord>& inputs,
                                     const std::string& binding,
                                     const std::map<std::string, std::string>& args,
                                     const std::string& caller_package) {
  const auto b = ResolveBinding(main.class_name, binding, caller_package);
  kv::ObjectOrigin origin;
  origin.source_object_ids.push_back(main.id);
  for (const auto& in : inputs) origin.source_object_ids.push_back(in.id);
  origin.function = binding;
  origin.args = args;
  const ObjectRecord out = NewOutputObject(b.binding.output_class, std::move(origin));
  exec::Task task = BuildTask(out, b.binding.function_ref, 1);
  store_->Put(RecordKind::kObject, out.id, out.ToJson(), 0);
  return task;
}

InvokeResult TaskManager::Invoke(const model::OaiRequest& req, InvokeMode mode,
                                 const std::string& caller_package) {
  InvokeResult result;
  if (!req.function) {
    auto obj = kv::LoadObject(*store_, req.main_object);
    if (!obj) throw Error(ErrorCode::kUnknownObject, "unknown object '" + req.main_object + "'");
    result.record = obj->record;
  } else {
    Target target{LoadCompleted(req.main_object), {}};
    for (const auto& id : req.inputs) target.inputs.push_back(LoadCompleted(id));
    const auto b = ResolveBinding(target.main.class_name, *req.function, caller_package);
    const auto fn = registry_.FindFunction(b.binding.function_ref);
    if (!fn) {
      throw Error(ErrorCode::kUnknownFunction,
                  "function '" + b.binding.function_ref + "' is not registered");
    }
    if (fn->kind == model::FunctionKind::kMacro) {
      result.record = InvokeMacro(*fn, b.binding.function_ref, target, req.args, b);
    } else {
      const exec::Task task =
          GenerateTask(target.main, target.inputs, *req.function, req.args, caller_package);
      {
        std::lock_guard lock(sent_mu_);
        sent_.insert(task.task_id);
      }
      // The caller gets the prospective object as created.
      result.record = kv::LoadObject(*store_, task.output_object.id)->record;
      Send(task);
      MarkRunning(task.output_object.id);
    }
    if (mode == InvokeMode::kAsync) return result;
    result.record = WaitTerminal(result.record.id, options_.sync_timeout_millis);
  }
  if (req.content_key && mode == InvokeMode::kSync) {
    if (result.record.status == ObjectStatus::kCompleted) {
      result.content = storage_->ResolveState(result.record.id, *req.content_key,
                                              options_.delivery_mode,
                                              options_.url_ttl_seconds);
    } else if (!req.function) {
      throw Error(ErrorCode::kSourceNotCompleted,
                  "object '" + result.record.id + "' is " +
                      std::string(ToString(result.record.status)));
    }
  }
  return result;
}

ObjectRecord TaskManager::InvokeMacro(const model::FunctionSpec& macro,
                                      const std::string& macro_name, const Target& target,
                                      const std::map<std::string, std::string>& args,
                                      const model::ResolvedBinding&) {
  const std::string macro_package = model::PackageOf(macro_name);
  InvocationGraph graph;
  graph.graph_id = NextId();
  graph.macro = macro_name;
  graph.output_node = macro.macro->output;

  // Step name -> (output object id, output class).
  std::map<std::string, std::pair<std::string, std::string>> produced;
  std::vector<ObjectRecord> outputs;
  auto resolve_ref = [&](const std::string& ref) -> std::pair<std::string, std::string> {
    const auto r = model::ParseStepRef(ref);
    if (!r) throw Error(ErrorCode::kInvalidArgument, "invalid step reference '" + ref + "'");
    switch (r->kind) {
      case model::StepRef::Kind::kSelf:
        return {target.main.id, target.main.class_name};
      case model::StepRef::Kind::kInput:
        if (r->input_index >= target.inputs.size()) {
          throw Error(ErrorCode::kInvalidArgument,
                      "macro needs input " + std::to_string(r->input_index) + ", got " +
                          std::to_string(target.inputs.size()));
        }
        return {target.inputs[r->input_index].id, target.inputs[r->input_index].class_name};
      case model::StepRef::Kind::kStep:
        break;
    }
    auto it = produced.find(r->step);
    if (it == produced.end()) {
      throw Error(ErrorCode::kInvalidArgument, "step '" + r->step + "' is not defined earlier");
    }
    return it->second;
  };

  for (const auto& step : macro.macro->steps) {
    const auto [target_id, target_class] = resolve_ref(step.target);
    const auto b = ResolveBinding(target_class, step.function, macro_package);
    const auto fn = registry_.FindFunction(b.binding.function_ref);
    if (!fn) {
      throw Error(ErrorCode::kUnknownFunction,
                  "function '" + b.binding.function_ref + "' is not registered");
    }
    if (fn->kind != model::FunctionKind::kTask) {
      throw Error(ErrorCode::kInvalidArgument,
                  "step '" + step.as + "' calls a macro; nested macros are not supported");
    }
    GraphNode node;
    node.binding = step.function;
    node.function = b.binding.function_ref;
    node.sources.push_back(target_id);
    for (const auto& in : step.inputs) node.sources.push_back(resolve_ref(in).first);
    node.args = model::ExpandArgs(step.args, args);
    node.output_class = b.binding.output_class;

    kv::ObjectOrigin origin{node.sources, step.function, node.args, graph.graph_id, step.as};
    ObjectRecord out = NewOutputObject(node.output_class, std::move(origin));
    node.output_object_id = out.id;
    produced[step.as] = {out.id, out.class_name};
    outputs.push_back(std::move(out));
    graph.nodes.emplace(step.as, std::move(node));
  }
  const auto edges = model::StepEdges(*macro.macro);
  for (const auto& [from, to] : edges) {
    graph.edges.emplace_back(macro.macro->steps[from].as, macro.macro->steps[to].as);
  }
  graph.root_output_object_id = graph.nodes.at(graph.output_node).output_object_id;

  std::vector<kv::MetadataStore::Write> writes;
  for (const auto& o : outputs) writes.push_back({RecordKind::kObject, o.id, o.ToJson(), 0});
  writes.push_back({RecordKind::kGraph, graph.graph_id, graph.ToJson(), 0});
  store_->PutBatch(std::move(writes));

  ReconcileGraph(graph.graph_id);
  return kv::LoadObject(*store_, graph.root_output_object_id)->record;
}

std::optional<InvocationGraph> TaskManager::LoadGraph(const std::string& graph_id) const {
  auto rec = store_->Get(RecordKind::kGraph, graph_id);
  if (!rec) return std::nullopt;
  return InvocationGraph::FromJson(rec->value);
}

std::vector<exec::Task> TaskManager::ReconcileGraph(const std::string& graph_id) {
  std::vector<std::string> ready;
  InvocationGraph graph;
  for (;;) {
    auto rec = store_->Get(RecordKind::kGraph, graph_id);
    if (!rec) return {};
    graph = InvocationGraph::FromJson(rec->value);
    bool changed = false;

    for (auto& [name, node] : graph.nodes) {
      if (IsTerminal(node.status)) continue;
      auto obj = kv::LoadObject(*store_, node.output_object_id);
      if (!obj) continue;
      if (obj->record.status == ObjectStatus::kCompleted) {
        node.status = NodeStatus::kCompleted;
        changed = true;
      } else if (obj->record.status == ObjectStatus::kFailed) {
        node.status = NodeStatus::kFailed;
        node.failure_cause = obj->record.failure_cause.value_or("failed");
        changed = true;
      }
    }

    for (const auto& [name, node] : graph.nodes) {
      if (node.status != NodeStatus::kFailed) continue;
      const std::string cause =
          "upstream step '" + name + "' failed: " + node.failure_cause.value_or("");
      for (const auto& d : graph.Descendants(name)) {
        auto& desc = graph.nodes.at(d);
        if (IsTerminal(desc.status)) continue;
        desc.status = NodeStatus::kSkipped;
        desc.failure_cause = cause;
        changed = true;
      }
    }

    for (auto& [name, node] : graph.nodes) {
      if (node.status != NodeStatus::kWaiting) continue;
      bool all_done = true;
      for (const auto& p : graph.Producers(name)) {
        all_done = all_done && graph.nodes.at(p).status == NodeStatus::kCompleted;
      }
      if (all_done) {
        node.status = NodeStatus::kReady;
        changed = true;
      }
    }

    if (changed) {
      try {
        store_->Put(RecordKind::kGraph, graph_id, graph.ToJson(), rec->version);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kVersionConflict) throw;
        continue;
      }
    }
    break;
  }

  for (const auto& [name, node] : graph.nodes) {
    if (node.status == NodeStatus::kSkipped) FailObject(node.output_object_id, *node.failure_cause);
  }

  std::vector<exec::Task> sent;
  bool failed_to_build = false;
  for (const auto& [name, node] : graph.nodes) {
    if (node.status != NodeStatus::kReady) continue;
    auto obj = kv::LoadObject(*store_, node.output_object_id);
    if (!obj) continue;
    exec::Task task;
    try {
      task = BuildTask(obj->record, node.function, 1);
    } catch (const Error& e) {
      FailObject(node.output_object_id, e.what());
      failed_to_build = true;
      continue;
    }
    // Claim the node before sending. Another instance reconciling the same
    // graph may also see it READY; only the one whose CAS wins dispatches.
    bool claimed = false;
    for (;;) {
      auto rec = store_->Get(RecordKind::kGraph, graph_id);
      auto g = InvocationGraph::FromJson(rec->value);
      auto& n = g.nodes.at(name);
      if (n.status != NodeStatus::kReady) break;
      n.status = NodeStatus::kRunning;
      try {
        store_->Put(RecordKind::kGraph, graph_id, g.ToJson(), rec->version);
        claimed = true;
        break;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kVersionConflict) throw;
      }
    }
    if (!claimed) continue;
    {
      std::lock_guard lock(sent_mu_);
      if (!sent_.insert(task.task_id).second) continue;
    }
    Send(task);
    sent.push_back(task);
    MarkRunning(node.output_object_id);
  }
  // The node's object is now FAILED; a second pass skips its descendants.
  if (failed_to_build) {
    auto more = ReconcileGraph(graph_id);
    sent.insert(sent.end(), more.begin(), more.end());
  }
  return sent;
}

std::vector<exec::Task> TaskManager::OnCompletion(const exec::TaskCompletion& c) {
  std::string out_id;
  int attempt = 0;
  try {
    std::tie(out_id, attempt) = exec::ParseTaskId(c.task_id);
  } catch (const Error&) {
    return {};
  }
  if (out_id != c.output_object_id) return {};

  std::optional<ObjectRecord> final_record;
  for (;;) {
    auto obj = kv::LoadObject(*store_, out_id);
    if (!obj || !obj->record.origin) return {};
    ObjectRecord rec = obj->record;
    if (kv::IsTerminal(rec.status)) {
      final_record = rec;
      break;
    }
    if (!c.success && c.transport_error && attempt < options_.max_attempts) {
      std::string function;
      if (rec.origin->graph_id) {
        const auto graph = LoadGraph(*rec.origin->graph_id);
        if (!graph) return {};
        function = graph->nodes.at(*rec.origin->node).function;
      } else {
        const auto src = kv::LoadObject(*store_, rec.origin->source_object_ids.at(0));
        if (!src) return {};
        function = model::ResolveClass(src->record.class_name, registry_)
                       .FindBinding(rec.origin->function)
                       ->binding.function_ref;
      }
      const exec::Task retry = BuildTask(rec, function, attempt + 1);
      {
        std::lock_guard lock(sent_mu_);
        if (!sent_.insert(retry.task_id).second) return {};
      }
      Send(retry);
      return {retry};
    }
    if (c.success) {
      rec.status = ObjectStatus::kCompleted;
      if (c.structured_output) rec.structured_state = *c.structured_output;
    } else {
      rec.status = ObjectStatus::kFailed;
      rec.failure_cause = c.error_detail.value_or("failed");
    }
    rec.updated_at = clock_->NowMillis();
    try {
      store_->Put(RecordKind::kObject, out_id, rec.ToJson(), obj->version);
      final_record = rec;
      break;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kVersionConflict) throw;
    }
  }
  Notify();
  if (final_record->origin->graph_id) return ReconcileGraph(*final_record->origin->graph_id);
  return {};
}

json TaskManager::GetStatus(const std::string& object_id) const {
  auto obj = kv::LoadObject(*store_, object_id);
  if (!obj) throw Error(ErrorCode::kUnknownObject, "unknown object '" + object_id + "'");
  json j = obj->record.ToJson();
  json keys = json::array();
  if (obj->record.status == ObjectStatus::kCompleted) {
    for (const auto& [k, _] : obj->record.unstructured_keys) keys.push_back(k);
  }
  j["availableContentKeys"] = std::move(keys);
  return j;
}

ObjectRecord TaskManager::WaitTerminal(const std::string& object_id, int64_t timeout_millis) {
  const auto deadline =
      std::chrono::steady_clock::now() + std::chrono::milliseconds(timeout_millis);
  for (;;) {
    auto obj = kv::LoadObject(*store_, object_id);
    if (!obj) throw Error(ErrorCode::kUnknownObject, "unknown object '" + object_id + "'");
    if (kv::IsTerminal(obj->record.status)) return obj->record;
    const auto now = std::chrono::steady_clock::now();
    if (now >= deadline) {
      throw Error(ErrorCode::kTimeout,
                  "object '" + object_id + "' not finished after " +
                      std::to_string(timeout_millis) + " ms",
                  {{"objectId", object_id}});
    }
    std::unique_lock lock(wait_mu_);
    wait_cv_.wait_until(lock, std::min(deadline, now + std::chrono::milliseconds(
                                                           options_.poll_millis)));
  }
}

}  // namespace oaas::invoke
