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

#include "qbench/dataset/schema.hpp"

#include <cmath>
#include <fstream>

#include "qbench/common/error.hpp"

namespace qbench {

namespace {

bool has_type(const json& v, const std::string& t) {
  if (t == "integer") {
    if (v.is_number_integer()) return true;
    return v.is_number_float() && std::floor(v.get<double>()) == v.get<double>();
  }
  if (t == "number") return v.is_number();
  if (t == "string") return v.is_string();
  if (t == "boolean") return v.is_boolean();
  if (t == "array") return v.is_array();
  if (t == "object") return v.is_object();
  if (t == "null") return v.is_null();
  return false;
}

std::string where(const std::string& ptr) { return ptr.empty() ? "/" : ptr; }

void check(const json& schema, json& v, const std::string& ptr, std::vector<std::string>& out) {
  if (!schema.is_object()) return;
  if (auto t = schema.find("type"); t != schema.end()) {
    bool ok = false;
    if (t->is_string()) {
      ok = has_type(v, t->get<std::string>());
    } else {
      for (const auto& s : *t) ok = ok || has_type(v, s.get<std::string>());
    }
    if (!ok) {
      out.push_back(where(ptr) + ": expected type " + t->dump() + ", got " + v.dump());
      return;
    }
  }
  if (auto c = schema.find("const"); c != schema.end() && v != *c) {
    out.push_back(where(ptr) + ": must equal " + c->dump() + ", got " + v.dump());
  }
  if (auto e = schema.find("enum"); e != schema.end()) {
    bool found = false;
    for (const auto& x : *e) found = found || x == v;
    if (!found) out.push_back(where(ptr) + ": " + v.dump() + " not in enum " + e->dump());
  }
  if (v.is_number()) {
    double x = v.get<double>();
    auto bound = [&](const char* key, auto fails, const char* label) {
      if (auto b = schema.find(key); b != schema.end() && fails(x, b->get<double>())) {
        out.push_back(where(ptr) + ": " + v.dump() + " violates " + label + " " + b->dump());
      }
    };
    bound("minimum", [](double a, double b) { return a < b; }, "minimum");
    bound("maximum", [](double a, double b) { return a > b; }, "maximum");
    bound("exclusiveMinimum", [](double a, double b) { return a <= b; }, "exclusiveMinimum");
    bound("exclusiveMaximum", [](double a, double b) { return a >= b; }, "exclusiveMaximum");
  }
  if (v.is_array()) {
    if (auto m = schema.find("minItems"); m != schema.end() && v.size() < m->get<std::size_t>()) {
      out.push_back(where(ptr) + ": fewer than minItems " + m->dump());
    }
    if (auto m = schema.find("maxItems"); m != schema.end() && v.size() > m->get<std::size_t>()) {
      out.push_back(where(ptr) + ": more than maxItems " + m->dump());
    }
    if (auto items = schema.find("items"); items != schema.end()) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        check(*items, v[i], ptr + "/" + std::to_string(i), out);
      }
    }
  }
  if (v.is_object()) {
    const json empty = json::object();
    const json& props = schema.contains("properties") ? schema.at("properties") : empty;
    if (auto req = schema.find("required"); req != schema.end()) {
      for (const auto& k : *req) {
        if (!v.contains(k.get<std::string>())) {
          out.push_back(where(ptr) + ": missing required property " + k.dump());
        }
      }
    }
    for (const auto& [k, sub] : props.items()) {
      if (!v.contains(k) && sub.is_object() && sub.contains("default")) v[k] = sub.at("default");
    }
    auto extra = schema.find("additionalProperties");
    for (auto it = v.begin(); it != v.end(); ++it) {
      if (props.contains(it.key())) {
        check(props.at(it.key()), it.value(), ptr + "/" + it.key(), out);
      } else if (extra != schema.end() && extra->is_boolean() && !extra->get<bool>()) {
        out.push_back(where(ptr) + ": unknown property \"" + it.key() + "\"");
      }
    }
  }
}

}  // namespace

std::vector<std::string> schema_problems(const json& schema, const json& instance) {
  json copy = instance;
  std::vector<std::string> out;
  check(schema, copy, "", out);
  return out;
}

json validate_params(const json& schema, const json& instance) {
  json copy = instance;
  std::vector<std::string> out;
  check(schema, copy, "", out);
  if (!out.empty()) throw ValidationError(std::move(out));
  return copy;
}

SchemaRegistry SchemaRegistry::load_directory(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw io_error("schema directory not found: " + dir.string());
  SchemaRegistry reg;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (!entry.is_regular_file() || !name.ends_with(".schema.json")) continue;
    std::ifstream in(entry.path());
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw io_error("unreadable schema " + entry.path().string() + ": " + e.what());
    }
    reg.add(std::move(j));
  }
  return reg;
}

void SchemaRegistry::add(json schema) {
  const auto& bn = schema.at("properties").at("benchmark_name");
  std::string name = bn.contains("const") ? bn.at("const").get<std::string>()
                                          : schema.at("title").get<std::string>();
  schemas_[name] = std::move(schema);
}

bool SchemaRegistry::contains(const std::string& benchmark_name) const {
  return schemas_.count(benchmark_name) > 0;
}

const json& SchemaRegistry::get(const std::string& benchmark_name) const {
  auto it = schemas_.find(benchmark_name);
  if (it == schemas_.end()) {
    throw ValidationError({"/benchmark_name: unknown benchmark \"" + benchmark_name + "\""});
  }
  return it->second;
}

std::vector<std::string> SchemaRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [k, _] : schemas_) out.push_back(k);
  return out;
}

json SchemaRegistry::validate(const json& params) const {
  if (!params.is_object()) throw ValidationError({"/: params must be an object"});
  auto bn = params.find("benchmark_name");
  if (bn == params.end() || !bn->is_string()) {
    throw ValidationError({"/: missing required property \"benchmark_name\""});
  }
  return validate_params(get(bn->get<std::string>()), params);
}

}  // namespace qbench
