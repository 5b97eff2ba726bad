// Copyright 2026 The qbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace qbench {

using json = nlohmann::json;

/// Checks \p instance against a JSON-Schema document and fills defaults.
///
/// Supported keywords: type, const, enum, required, minimum, maximum,
/// exclusiveMinimum, exclusiveMaximum, minItems, maxItems, default,
/// properties, additionalProperties (boolean) and items. Anything else is
/// ignored. Throws ValidationError listing every violation.
json validate_params(const json& schema, const json& instance);

/// Same checks, returning the problem list instead of throwing.
std::vector<std::string> schema_problems(const json& schema, const json& instance);

class SchemaRegistry {
 public:
  /// Loads every *.schema.json in \p dir, keyed by benchmark_name const.
  static SchemaRegistry load_directory(const std::filesystem::path& dir);

  void add(json schema);
  bool contains(const std::string& benchmark_name) const;
  const json& get(const std::string& benchmark_name) const;
  std::vector<std::string> names() const;

  /// Looks up the schema named by params.benchmark_name and validates.
  json validate(const json& params) const;

 private:
  std::map<std::string, json> schemas_;
};

}  // namespace qbench
