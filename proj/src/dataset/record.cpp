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

#include "qbench/dataset/record.hpp"

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <map>
#include <random>
#include <regex>
#include <sstream>
#include <tuple>

#include "qbench/common/error.hpp"
#include "qbench/common/hash.hpp"

namespace qbench {

namespace fs = std::filesystem;

std::string BenchmarkRecord::compute_hash() const {
  return content_hash({{"params", params}, {"results", results}, {"provenance", provenance}});
}

void BenchmarkRecord::seal() { id = compute_hash(); }

json BenchmarkRecord::to_json() const {
  return {{"id", id},
          {"timestamp", timestamp},
          {"source", source},
          {"version", version},
          {"provider", provider},
          {"device", device},
          {"benchmark_name", benchmark_name},
          {"params", params},
          {"results", results},
          {"provenance", provenance}};
}

BenchmarkRecord BenchmarkRecord::from_json(const json& j) {
  BenchmarkRecord r;
  r.id = j.at("id").get<std::string>();
  r.timestamp = j.at("timestamp").get<std::string>();
  r.source = j.at("source").get<std::string>();
  r.version = j.at("version").get<std::string>();
  r.provider = j.at("provider").get<std::string>();
  r.device = j.at("device").get<std::string>();
  r.benchmark_name = j.at("benchmark_name").get<std::string>();
  r.params = j.at("params");
  r.results = j.at("results");
  r.provenance = j.value("provenance", json::object());
  return r;
}

std::string benchmark_type(const std::string& name) {
  static const std::map<std::string, std::string> known = {
      {"BSEQ", "bseq"},           {"EPLG", "eplg"},
      {"Mirror Circuits", "mirror"}, {"CLOPS", "clops"},
      {"QML Kernel", "qml_kernel"}, {"WIT", "wit"},
      {"Linear Ramp QAOA", "lr_qaoa"}, {"Quantum Fourier Transform", "qft"}};
  if (auto it = known.find(name); it != known.end()) return it->second;
  std::string out;
  for (char c : name) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else if (!out.empty() && out.back() != '_') {
      out += '_';
    }
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  if (out.empty()) throw Error(ErrorKind::Validation, "benchmark name has no usable characters");
  return out;
}

std::string timestamp_slug(const std::string& iso) {
  static const std::regex re(R"((\d{4})-(\d{2})-(\d{2})T(\d{2}):(\d{2}):(\d{2})Z)");
  std::smatch m;
  if (!std::regex_match(iso, m, re)) {
    throw Error(ErrorKind::Validation, "timestamp is not ISO-8601 UTC (YYYY-MM-DDTHH:MM:SSZ): " + iso);
  }
  return m[1].str() + m[2].str() + m[3].str() + "T" + m[4].str() + m[5].str() + m[6].str() + "Z";
}

std::string timestamp_from_slug(const std::string& slug) {
  static const std::regex re(R"((\d{4})(\d{2})(\d{2})T(\d{2})(\d{2})(\d{2})Z)");
  std::smatch m;
  if (!std::regex_match(slug, m, re)) {
    throw Error(ErrorKind::Validation, "malformed timestamp slug: " + slug);
  }
  return m[1].str() + "-" + m[2].str() + "-" + m[3].str() + "T" + m[4].str() + ":" + m[5].str() +
         ":" + m[6].str() + "Z";
}

std::string utc_now_iso() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

namespace {

void check_component(const std::string& what, const std::string& s) {
  static const std::regex safe(R"([A-Za-z0-9][A-Za-z0-9._-]*)");
  if (!std::regex_match(s, safe)) {
    throw Error(ErrorKind::Validation, "unsafe " + what + " path component: \"" + s + "\"");
  }
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw io_error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string serialize(const BenchmarkRecord& r) { return canonical_dump(r.to_json()) + "\n"; }

}  // namespace

std::string record_path(const BenchmarkRecord& r) {
  check_component("source", r.source);
  check_component("version", r.version);
  check_component("provider", r.provider);
  check_component("device", r.device);
  const std::string type = benchmark_type(r.benchmark_name);
  check_component("benchmark type", type);
  if (!std::regex_match(r.id, std::regex("[0-9a-f]{8}"))) {
    throw Error(ErrorKind::Validation, "record id must be 8 lowercase hex chars: \"" + r.id + "\"");
  }
  return r.source + "/" + r.version + "/" + r.provider + "/" + r.device + "/" +
         timestamp_slug(r.timestamp) + "_" + type + "_" + r.id + ".json";
}

RecordPathParts parse_record_path(const fs::path& relative) {
  std::vector<std::string> parts;
  for (const auto& p : relative) parts.push_back(p.string());
  if (parts.size() != 5) {
    throw Error(ErrorKind::Validation, "record path needs 5 components: " + relative.string());
  }
  static const std::regex file(R"((\d{8}T\d{6}Z)_([a-z0-9_]+)_([0-9a-f]{8})\.json)");
  std::smatch m;
  if (!std::regex_match(parts[4], m, file)) {
    throw Error(ErrorKind::Validation, "malformed record file name: " + parts[4]);
  }
  RecordPathParts out{parts[0], parts[1], parts[2], parts[3],
                      timestamp_from_slug(m[1].str()), m[2].str(), m[3].str()};
  for (const auto* s : {&out.source, &out.version, &out.provider, &out.device}) {
    check_component("record", *s);
  }
  return out;
}

bool ScanFilter::matches(const BenchmarkRecord& r) const {
  auto ok = [](const std::optional<std::string>& want, const std::string& have) {
    return !want || *want == have;
  };
  return ok(source, r.source) && ok(version, r.version) && ok(provider, r.provider) &&
         ok(device, r.device) &&
         (!benchmark || *benchmark == r.benchmark_name || *benchmark == benchmark_type(r.benchmark_name));
}

BenchmarkRecord load_record(const fs::path& file) {
  json j;
  try {
    j = json::parse(read_file(file));
  } catch (const json::exception& e) {
    throw io_error("invalid JSON in " + file.string() + ": " + e.what());
  }
  BenchmarkRecord r;
  try {
    r = BenchmarkRecord::from_json(j);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Validation, "malformed record " + file.string() + ": " + e.what());
  }
  if (r.compute_hash() != r.id) {
    throw Error(ErrorKind::Validation, "content hash mismatch in " + file.string());
  }
  fs::path rel;
  auto it = file.end();
  std::vector<fs::path> tail;
  for (int k = 0; k < 5 && it != file.begin(); ++k) tail.push_back(*--it);
  for (auto p = tail.rbegin(); p != tail.rend(); ++p) rel /= *p;
  if (fs::path(record_path(r)) != rel) {
    throw Error(ErrorKind::Validation, "record fields disagree with its path " + file.string());
  }
  return r;
}

ScanResult scan_dataset(const fs::path& root, const ScanFilter& filter, const SchemaRegistry* schemas) {
  ScanResult out;
  if (!fs::exists(root)) throw Error(ErrorKind::NotFound, "dataset root not found: " + root.string());
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    const auto name = entry.path().filename().string();
    if (name.starts_with(".") || !name.ends_with(".json")) continue;
    try {
      BenchmarkRecord r = load_record(entry.path());
      if (!filter.matches(r)) continue;
      if (schemas) {
        auto problems = schema_problems(schemas->get(r.benchmark_name), r.params);
        if (!problems.empty()) {
          std::string msg = "params fail schema:";
          for (const auto& p : problems) msg += " " + p + ";";
          out.diagnostics.push_back({entry.path().string(), msg});
          continue;
        }
      }
      out.records.push_back(std::move(r));
    } catch (const std::exception& e) {
      out.diagnostics.push_back({entry.path().string(), e.what()});
    }
  }
  std::sort(out.records.begin(), out.records.end(), [](const auto& a, const auto& b) {
    return std::tie(a.timestamp, a.id, a.device) < std::tie(b.timestamp, b.id, b.device);
  });
  std::sort(out.diagnostics.begin(), out.diagnostics.end(),
            [](const auto& a, const auto& b) { return a.path < b.path; });
  return out;
}

fs::path upload_record(const fs::path& root, BenchmarkRecord record) {
  if (record.timestamp.empty()) record.timestamp = utc_now_iso();
  const std::string expected = record.compute_hash();
  if (record.id.empty()) {
    record.id = expected;
  } else if (record.id != expected) {
    throw Error(ErrorKind::Validation, "record id " + record.id + " does not match content hash " + expected);
  }
  const fs::path target = root / record_path(record);
  const std::string bytes = serialize(record);
  std::error_code ec;
  fs::create_directories(target.parent_path(), ec);
  if (ec) throw io_error("cannot create " + target.parent_path().string() + ": " + ec.message());

  auto same_as_existing = [&] {
    if (!fs::exists(target)) return false;
    if (read_file(target) == bytes) return true;
    throw io_error("different content already stored at " + target.string());
  };
  if (same_as_existing()) return target;

  std::random_device rd;
  const fs::path tmp = target.parent_path() /
                       (".tmp-" + record.id + "-" + std::to_string(::getpid()) + "-" +
                        std::to_string(rd()) + std::to_string(rd()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << bytes;
    out.flush();
    if (!out) {
      fs::remove(tmp, ec);
      throw io_error("write failed for " + tmp.string());
    }
  }
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw io_error("rename failed for " + target.string());
  }
  return target;
}

json export_bundle(const std::vector<BenchmarkRecord>& records) {
  json benchmarks = json::array();
  std::map<std::pair<std::string, std::string>, json> platforms;
  for (const auto& r : records) {
    benchmarks.push_back(r.to_json());
    json& p = platforms[{r.provider, r.device}];
    if (p.is_null()) {
      p = {{"provider", r.provider}, {"device", r.device}, {"num_records", 0},
           {"benchmarks", json::array()}, {"latest", r.timestamp}};
    }
    p["num_records"] = p["num_records"].get<int>() + 1;
    auto& names = p["benchmarks"];
    if (std::find(names.begin(), names.end(), r.benchmark_name) == names.end()) {
      names.push_back(r.benchmark_name);
    }
    if (r.timestamp > p["latest"].get<std::string>()) p["latest"] = r.timestamp;
  }
  json index = json::array();
  for (auto& [_, p] : platforms) index.push_back(std::move(p));
  return {{"benchmarks", benchmarks}, {"platforms", index}};
}

}  // namespace qbench
