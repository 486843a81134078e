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

#ifndef OAAS_MODEL_REGISTRY_H_
#define OAAS_MODEL_REGISTRY_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "oaas/model/package.h"

namespace oaas::model {

/// Read view over registered specs, keyed by qualified name. Returned specs
/// have all references qualified.
class SpecRegistry {
 public:
  virtual ~SpecRegistry() = default;
  virtual std::optional<ClassSpec> FindClass(std::string_view qualified) const = 0;
  virtual std::optional<FunctionSpec> FindFunction(
      std::string_view qualified) const = 0;
};

class InMemoryRegistry final : public SpecRegistry {
 public:
  void AddPackage(const PackageSpec& pkg);

  std::optional<ClassSpec> FindClass(std::string_view qualified) const override;
  std::optional<FunctionSpec> FindFunction(
      std::string_view qualified) const override;

 private:
  std::map<std::string, ClassSpec, std::less<>> classes_;
  std::map<std::string, FunctionSpec, std::less<>> functions_;
};

/// A package under validation layered over the registered specs; the
/// package's own entries win.
class OverlayRegistry final : public SpecRegistry {
 public:
  OverlayRegistry(const PackageSpec& pkg, const SpecRegistry& base);

  std::optional<ClassSpec> FindClass(std::string_view qualified) const override;
  std::optional<FunctionSpec> FindFunction(
      std::string_view qualified) const override;

 private:
  InMemoryRegistry local_;
  const SpecRegistry& base_;
};

}  // namespace oaas::model

#endif  // OAAS_MODEL_REGISTRY_H_
