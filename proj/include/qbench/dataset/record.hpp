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
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qbench/dataset/schema.hpp"

namespace qbench {

using json = nlohmann::json;

inline constexpr const char* kEngineVersion = "qbench-0.4.0";

struct BenchmarkRecord {
  std::string id;         // content hash
  std::string timestamp;  // ISO-8601 UTC, e.g. 2025-12-01T10:00:00Z
  std::string source = "qbench";
  std::string version = "v1";
  std::string provider;
  std::string device;
  std::string benchmark_name;
  json params = json::object();
  json results = json::object();
  json provenance = json::object();  // seed, engine_version, device_fingerprint

  /// First 8 hex chars of SHA-256 over canonical {params, results, provenance}.
  std::string compute_hash() const;
  /// Sets id from the content.
  void seal();

  json to_json() const;
  static BenchmarkRecord from_json(const json& j);
};

/// File-name slug for a benchmark name, e.g. "Linear Ramp QAOA" -> "lr_qaoa".
std::string benchmark_type(const std::string& benchmark_name);

/// 2025-12-01T10:00:00Z -> 20251201T100000Z and back.
std::string timestamp_slug(const std::string& iso);
std::string timestamp_from_slug(const std::string& slug);
std::string utc_now_iso();

struct RecordPathParts {
  std::string source, version, provider, device, timestamp, type, hash;
  bool operator==(const RecordPathParts&) const = default;
};

/// {source}/{version}/{provider}/{device}/{timestamp}_{type}_{hash}.json
std::string record_path(const BenchmarkRecord& record);
RecordPathParts parse_record_path(const std::filesystem::path& relative);

struct ScanFilter {
  std::optional<std::string> source, version, provider, device, benchmark;
  bool matches(const BenchmarkRecord& r) const;
};

struct ScanDiagnostic {
  std::string path;
  std::string message;
};

struct ScanResult {
  std::vector<BenchmarkRecord> records;  // sorted by (timestamp, id)
  std::vector<ScanDiagnostic> diagnostics;
};

/// Walks \p root, re-validating each record's params (when \p schemas is
/// given), hash and path. Broken files land in diagnostics.
ScanResult scan_dataset(const std::filesystem::path& root, const ScanFilter& filter = {},
                        const SchemaRegistry* schemas = nullptr);

/// Atomic write (temp file + rename). Re-uploading identical content is a
/// no-op; different content at the same path throws.
std::filesystem::path upload_record(const std::filesystem::path& root, BenchmarkRecord record);

/// Loads one record file and checks it against its path and hash.
BenchmarkRecord load_record(const std::filesystem::path& file);

/// {"benchmarks": [records...], "platforms": [{provider, device, ...}]}.
json export_bundle(const std::vector<BenchmarkRecord>& records);

}  // namespace qbench
