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
#include "qbench/cli/cli.hpp"

#include <fcntl.h>
#include <signal.h>
#include <spawn.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "qbench/analytics/analytics.hpp"
#include "qbench/cli/svg.hpp"
#include "qbench/dataset/record.hpp"
#include "qbench/jobs/execute.hpp"
#include "qbench/jobs/runtime.hpp"
#include "qbench/scoring/score.hpp"

extern char** environ;

namespace qbench {

namespace fs = std::filesystem;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Usage: return kExitUsage;
    case ErrorKind::Validation: return kExitValidation;
    case ErrorKind::Execution: return kExitExecution;
    case ErrorKind::Io: return kExitIo;
    case ErrorKind::NotFound: return kExitNotFound;
  }
  return kExitExecution;
}

namespace {

const char* format_name(OutputFormat f) {
  switch (f) {
    case OutputFormat::Table: return "table";
    case OutputFormat::Json: return "json";
    case OutputFormat::Csv: return "csv";
  }
  return "table";
}

OutputFormat parse_format(const std::string& s) {
  if (s == "table") return OutputFormat::Table;
  if (s == "json") return OutputFormat::Json;
  if (s == "csv") return OutputFormat::Csv;
  throw Error(ErrorKind::Usage, "unknown output format '" + s + "' (table, json, csv)");
}

Error usage(const std::string& msg) { return Error(ErrorKind::Usage, msg); }

}  // namespace

json CliConfig::to_json() const {
  return {{"dataset_root", dataset_root.string()},
          {"devices", device_dir.string()},
          {"schemas", schema_dir.string()},
          {"provider", provider},
          {"device", device},
          {"format", format_name(format)},
          {"seed", seed ? json(std::to_string(*seed)) : json(nullptr)},
          {"spawn_worker", spawn_worker}};
}

namespace {

// ---------------------------------------------------------------- plumbing

struct RawOptions {
  std::string config, dataset_root, devices, schemas, provider, device, format, seed;
  bool no_worker = false;
};

struct Context {
  CliConfig cfg;
  RawOptions raw;
  const CliEnvironment& env;
  std::ostream& out;
  std::ostream& err;
};

std::uint64_t parse_seed(const std::string& s) {
  try {
    std::size_t pos = 0;
    if (!s.empty() && s[0] == '-') throw std::invalid_argument(s);
    std::uint64_t v = std::stoull(s, &pos, 0);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw usage("seed must be a non-negative integer, got '" + s + "'");
  }
}

json read_json_file(const fs::path& file, const std::string& what) {
  std::ifstream in(file);
  if (!in) {
    throw Error(fs::exists(file) ? ErrorKind::Io : ErrorKind::NotFound,
                "cannot open " + what + " " + file.string());
  }
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Validation, file.string() + ": invalid JSON: " + e.what());
  }
}

CliConfig resolve_config(const RawOptions& raw, const CliEnvironment& env) {
  auto getenv = [&](const std::string& k) -> std::optional<std::string> {
    if (env.getenv) return env.getenv(k);
    const char* v = std::getenv(k.c_str());
    if (!v) return std::nullopt;
    return std::string(v);
  };
  fs::path cwd = env.cwd.empty() ? fs::current_path() : env.cwd;
  auto absolute = [&](const fs::path& base, const fs::path& p) {
    return fs::weakly_canonical(p.is_absolute() ? p : base / p);
  };

  CliConfig c;
  c.dataset_root = cwd / "qbench-dataset";
  c.device_dir = fs::path(QBENCH_DATA_DIR) / "devices";
  c.schema_dir = fs::path(QBENCH_DATA_DIR) / "schemas";

  std::string config_file = raw.config;
  if (config_file.empty()) config_file = getenv("QBENCH_CONFIG").value_or("");
  if (!config_file.empty()) {
    fs::path file = absolute(cwd, config_file);
    json j = read_json_file(file, "config file");
    if (!j.is_object()) throw Error(ErrorKind::Validation, file.string() + ": config must be an object");
    static const std::set<std::string> known = {"dataset_root", "devices", "schemas",
                                                "provider", "device", "format"};
    for (const auto& [k, v] : j.items()) {
      if (!known.count(k)) throw Error(ErrorKind::Validation, file.string() + ": unknown key " + k);
      if (!v.is_string()) throw Error(ErrorKind::Validation, file.string() + ": " + k + " must be a string");
    }
    fs::path base = file.parent_path();
    if (j.contains("dataset_root")) c.dataset_root = absolute(base, j["dataset_root"].get<std::string>());
    if (j.contains("devices")) c.device_dir = absolute(base, j["devices"].get<std::string>());
    if (j.contains("schemas")) c.schema_dir = absolute(base, j["schemas"].get<std::string>());
    if (j.contains("provider")) c.provider = j["provider"].get<std::string>();
    if (j.contains("device")) c.device = j["device"].get<std::string>();
    if (j.contains("format")) c.format = parse_format(j["format"].get<std::string>());
  }

  if (auto v = getenv("QBENCH_DATASET_ROOT")) c.dataset_root = absolute(cwd, *v);
  if (auto v = getenv("QBENCH_DEVICES")) c.device_dir = absolute(cwd, *v);
  if (auto v = getenv("QBENCH_SCHEMAS")) c.schema_dir = absolute(cwd, *v);
  if (auto v = getenv("QBENCH_PROVIDER")) c.provider = *v;
  if (auto v = getenv("QBENCH_DEVICE")) c.device = *v;
  if (auto v = getenv("QBENCH_FORMAT")) c.format = parse_format(*v);
  if (auto v = getenv("QBENCH_SEED")) c.seed = parse_seed(*v);
  if (auto v = getenv("QBENCH_NO_WORKER")) c.spawn_worker = (*v).empty() || *v == "0";

  if (!raw.dataset_root.empty()) c.dataset_root = absolute(cwd, raw.dataset_root);
  if (!raw.devices.empty()) c.device_dir = absolute(cwd, raw.devices);
  if (!raw.schemas.empty()) c.schema_dir = absolute(cwd, raw.schemas);
  if (!raw.provider.empty()) c.provider = raw.provider;
  if (!raw.device.empty()) c.device = raw.device;
  if (!raw.format.empty()) c.format = parse_format(raw.format);
  if (!raw.seed.empty()) c.seed = parse_seed(raw.seed);
  if (raw.no_worker) c.spawn_worker = false;
  c.dataset_root = fs::weakly_canonical(c.dataset_root);
  c.device_dir = fs::weakly_canonical(c.device_dir);
  c.schema_dir = fs::weakly_canonical(c.schema_dir);
  return c;
}

DeviceRegistry load_devices(const CliConfig& c) { return DeviceRegistry::load_directory(c.device_dir); }

SchemaRegistry load_schemas(const CliConfig& c) { return SchemaRegistry::load_directory(c.schema_dir); }

fs::path log_file(const CliConfig& c) { return c.dataset_root / ".jobs.jsonl"; }
fs::path lock_file(const CliConfig& c) { return c.dataset_root / ".worker.lock"; }

const std::string& require_device(const CliConfig& c) {
  if (c.device.empty()) throw usage("--device is required (or set QBENCH_DEVICE)");
  return c.device;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string fixed(double v, int prec) {
  std::ostringstream o;
  o << std::fixed << std::setprecision(prec) << v;
  return o.str();
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

using Rows = std::vector<std::vector<std::string>>;

void print_table(std::ostream& out, const std::vector<std::string>& header, const Rows& rows) {
  std::vector<std::size_t> w(header.size(), 0);
  for (std::size_t i = 0; i < header.size(); ++i) w[i] = header[i].size();
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size() && i < w.size(); ++i) w[i] = std::max(w[i], r[i].size());
  }
  auto line = [&](const std::vector<std::string>& r) {
    std::string s;
    for (std::size_t i = 0; i < r.size(); ++i) {
      s += r[i];
      if (i + 1 < r.size()) s += std::string(w[i] - r[i].size() + 2, ' ');
    }
    out << s << "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
}

void print_csv(std::ostream& out, const std::vector<std::string>& header, const Rows& rows) {
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << csv_cell(r[i]);
    out << "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
}

/// Prints \p rows as a table or CSV, or \p j as JSON.
void emit(const Context& ctx, const json& j, const std::vector<std::string>& header, const Rows& rows) {
  switch (ctx.cfg.format) {
    case OutputFormat::Json: ctx.out << j.dump(2) << "\n"; break;
    case OutputFormat::Csv: print_csv(ctx.out, header, rows); break;
    case OutputFormat::Table: print_table(ctx.out, header, rows); break;
  }
}

void write_text(const fs::path& file, const std::string& text) {
  if (file.has_parent_path()) fs::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::binary);
  if (!out) throw io_error("cannot write " + file.string());
  out << text;
  if (!out) throw io_error("write failed: " + file.string());
}

// ---------------------------------------------------------------- worker

/// Runs every unfinished job in the log. The caller holds the worker lock.
std::size_t drain_log(const CliConfig& cfg) {
  std::size_t total = 0;
  std::set<std::string> previous;
  for (;;) {
    std::vector<Job> pending;
    for (auto& j : JobLog(log_file(cfg)).replay()) {
      if (!is_terminal(j.state)) pending.push_back(std::move(j));
    }
    if (pending.empty()) return total;
    std::set<std::string> ids;
    for (const auto& j : pending) ids.insert(j.job_id);
    if (ids == previous) throw io_error("job log is not advancing: " + log_file(cfg).string());
    previous = ids;
    RuntimeOptions o;
    o.autostart = false;
    o.log_path = log_file(cfg);
    JobRuntime rt(load_devices(cfg), load_schemas(cfg), o);
    rt.adopt(pending);
    total += rt.drain();
  }
}

/// Starts a detached worker process that drains the queue and exits.
void spawn_worker(const Context& ctx) {
  if (!ctx.cfg.spawn_worker || !ctx.env.worker_exe) return;
  std::vector<std::string> args = {ctx.env.worker_exe->string(), "worker", "run",
                                   "--dataset-root", ctx.cfg.dataset_root.string(),
                                   "--devices", ctx.cfg.device_dir.string(),
                                   "--schemas", ctx.cfg.schema_dir.string()};
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  argv.push_back(nullptr);

  posix_spawn_file_actions_t fa;
  posix_spawnattr_t attr;
  posix_spawn_file_actions_init(&fa);
  posix_spawn_file_actions_addopen(&fa, 0, "/dev/null", O_RDONLY, 0);
  posix_spawn_file_actions_addopen(&fa, 1, "/dev/null", O_WRONLY, 0);
  posix_spawn_file_actions_addopen(&fa, 2, "/dev/null", O_WRONLY, 0);
  posix_spawnattr_init(&attr);
  sigset_t none;
  sigemptyset(&none);
  posix_spawnattr_setsigmask(&attr, &none);
  // own session: Ctrl-C in the dispatching terminal does not reach the worker
  posix_spawnattr_setflags(&attr, POSIX_SPAWN_SETSID | POSIX_SPAWN_SETSIGMASK);
  pid_t pid = 0;
  int rc = posix_spawn(&pid, argv[0], &fa, &attr, argv.data(), environ);
  posix_spawn_file_actions_destroy(&fa);
  posix_spawnattr_destroy(&attr);
  if (rc != 0) {
    ctx.err << "warning: could not start a background worker (" << std::strerror(rc)
            << "); jobs run on the next 'poll --wait'\n";
  }
}

/// Replays the log until every selected job is finished, running queued work
/// in-process whenever no worker holds the lock.
std::vector<Job> wait_for_jobs(const CliConfig& cfg, const std::function<bool(const Job&)>& selected,
                               double timeout_seconds) {
  auto deadline = std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(timeout_seconds));
  for (;;) {
    std::vector<Job> jobs = JobLog(log_file(cfg)).replay();
    bool any = false, all_done = true;
    for (const auto& j : jobs) {
      if (!selected(j)) continue;
      any = true;
      all_done = all_done && is_terminal(j.state);
    }
    if (!any || all_done) return jobs;
    {
      FileLock lock(lock_file(cfg), false);
      if (lock.locked()) {
        drain_log(cfg);
        continue;
      }
    }
    if (std::chrono::steady_clock::now() > deadline) {
      throw execution_error("timed out after " + fixed(timeout_seconds, 0) + " s waiting for jobs");
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(100));
  }
}

std::vector<Job> selected_jobs(const Context& ctx, const std::function<bool(const Job&)>& sel,
                               bool wait, double timeout) {
  std::vector<Job> all = wait ? wait_for_jobs(ctx.cfg, sel, timeout) : JobLog(log_file(ctx.cfg)).replay();
  std::vector<Job> out;
  for (auto& j : all) {
    if (sel(j)) out.push_back(std::move(j));
  }
  return out;
}

Job find_job(const Context& ctx, const std::string& id, bool wait, double timeout) {
  auto jobs = selected_jobs(ctx, [&](const Job& j) { return j.job_id == id; }, wait, timeout);
  if (jobs.empty()) throw Error(ErrorKind::NotFound, "unknown job " + id);
  return jobs.front();
}

std::string headline(const Job& j) {
  if (j.state == JobState::Failed) return j.error;
  if (!j.result) return "";
  const json& r = j.result->results;
  for (const char* key : {"lccs", "eplg", "polarization", "clops", "accuracy", "expectation",
                          "effective_ratio"}) {
    if (r.contains(key)) {
      const json& v = r.at(key);
      bool real = v.is_number_float();
      return std::string(key) + "=" + (real ? fixed(v.get<double>(), 4) : v.dump());
    }
  }
  if (r.contains("fidelity_by_width")) return "fidelity_by_width=" + r.at("fidelity_by_width").dump();
  return "";
}

std::vector<std::string> job_row(const Job& j) {
  return {j.job_id, j.benchmark_name, j.device, to_string(j.state),
          j.result ? j.result->id : std::string(), headline(j)};
}

const std::vector<std::string> kJobHeader = {"job_id", "benchmark", "device", "state", "record", "detail"};

// ---------------------------------------------------------------- job

int cmd_job_dispatch(const Context& ctx, const std::string& file) {
  json params = read_json_file(file, "benchmark config");
  RuntimeOptions o;
  o.autostart = false;
  o.log_path = log_file(ctx.cfg);
  JobRuntime rt(load_devices(ctx.cfg), load_schemas(ctx.cfg), o);
  std::string id = rt.dispatch(params, ctx.cfg.provider, require_device(ctx.cfg), ctx.cfg.seed);
  spawn_worker(ctx);
  Job j = rt.poll(id);
  if (ctx.cfg.format == OutputFormat::Table) {
    ctx.out << id << "\n";
  } else {
    emit(ctx, j.to_json(), kJobHeader, {job_row(j)});
  }
  return kExitOk;
}

int cmd_job_poll(const Context& ctx, const std::string& id, bool wait, double timeout) {
  Job j = find_job(ctx, id, wait, timeout);
  emit(ctx, j.to_json(), kJobHeader, {job_row(j)});
  return wait && j.state == JobState::Failed ? kExitExecution : kExitOk;
}

int cmd_job_view(const Context& ctx, const std::string& id, const std::string& svg_file) {
  Job j = find_job(ctx, id, false, 0);
  if (!svg_file.empty()) {
    if (!j.result) throw execution_error("job " + id + " has no result to plot");
    if (benchmark_type(j.benchmark_name) != "eplg") {
      throw usage("decay plots are available for EPLG records only");
    }
    write_text(svg_file, svg::eplg_decay_plot(j.result->results));
  }
  if (ctx.cfg.format != OutputFormat::Table) {
    Rows rows;
    for (const auto& [k, v] : j.to_json().items()) rows.push_back({k, v.is_string() ? v.get<std::string>() : v.dump()});
    emit(ctx, j.to_json(), {"field", "value"}, rows);
    return kExitOk;
  }
  ctx.out << "job        " << j.job_id << "\n"
          << "benchmark  " << j.benchmark_name << "\n"
          << "device     " << j.provider << "/" << j.device << " (" << j.device_fingerprint << ")\n"
          << "state      " << to_string(j.state) << "\n"
          << "seed       " << j.seed << "\n";
  if (!j.suite_id.empty()) ctx.out << "suite      " << j.suite_id << "\n";
  for (const auto& [s, t] : j.timestamps) ctx.out << std::left << std::setw(11) << s << t << "\n";
  ctx.out << "params     " << j.params.dump() << "\n";
  if (!j.error.empty()) ctx.out << "error      " << j.error << "\n";
  if (j.result) {
    ctx.out << "record     " << j.result->id << "  " << record_path(*j.result) << "\n"
            << "results\n" << j.result->results.dump(2) << "\n";
  }
  return kExitOk;
}

int cmd_job_estimate(const Context& ctx, const std::string& file, const std::string& pricing_file) {
  json params = load_schemas(ctx.cfg).validate(read_json_file(file, "benchmark config"));
  DeviceRegistry devices = load_devices(ctx.cfg);
  const std::string& name = require_device(ctx.cfg);
  if (!devices.contains(name)) throw Error(ErrorKind::NotFound, "unknown device " + name);
  std::optional<PricingModel> pricing;
  if (!pricing_file.empty()) pricing = PricingModel::load(pricing_file);
  CostEstimate e = estimate_cost(params, devices.get(name, ctx.cfg.provider), ctx.cfg.seed.value_or(0), pricing);
  json j = e.to_json();
  j["benchmark_name"] = params.at("benchmark_name");
  j["device"] = name;
  Rows rows;
  for (const char* k : {"benchmark_name", "device", "tasks", "total_shots", "n1q", "n2q", "nmeas",
                        "hqc", "cost", "currency", "runtime_seconds"}) {
    const json& v = j.at(k);
    rows.push_back({k, v.is_null() ? "-" : v.is_string() ? v.get<std::string>() : v.dump()});
  }
  emit(ctx, j, {"field", "value"}, rows);
  return kExitOk;
}

int cmd_job_upload(const Context& ctx, const std::string& id, bool wait, double timeout) {
  Job j = find_job(ctx, id, wait, timeout);
  if (j.state != JobState::Done || !j.result) {
    throw execution_error("job " + id + " is " + to_string(j.state) + ", only done jobs upload");
  }
  fs::path p = upload_record(ctx.cfg.dataset_root, *j.result);
  json out = {{"job_id", id}, {"record_id", j.result->id}, {"path", p.string()}};
  emit(ctx, out, {"job_id", "record", "path"}, {{id, j.result->id, p.string()}});
  return kExitOk;
}

// ---------------------------------------------------------------- suite

int cmd_suite_dispatch(const Context& ctx, const std::string& file) {
  SuiteSpec suite = SuiteSpec::load(file);
  RuntimeOptions o;
  o.autostart = false;
  o.log_path = log_file(ctx.cfg);
  JobRuntime rt(load_devices(ctx.cfg), load_schemas(ctx.cfg), o);
  SuiteDispatch d = rt.dispatch_suite(suite, ctx.cfg.provider, require_device(ctx.cfg), ctx.cfg.seed);
  spawn_worker(ctx);
  json j = d.to_json();
  j["name"] = suite.name;
  Rows rows;
  for (const auto& id : d.job_ids) rows.push_back(job_row(rt.poll(id)));
  if (ctx.cfg.format == OutputFormat::Table) ctx.out << "suite " << d.suite_id << "\n";
  emit(ctx, j, kJobHeader, rows);
  return kExitOk;
}

int cmd_suite_poll(const Context& ctx, const std::string& suite_id, bool wait, double timeout,
                   bool upload) {
  auto jobs = selected_jobs(ctx, [&](const Job& j) { return j.suite_id == suite_id; }, wait, timeout);
  if (jobs.empty()) throw Error(ErrorKind::NotFound, "unknown suite " + suite_id);
  json arr = json::array();
  Rows rows;
  int failed = 0, done = 0;
  json uploaded = json::array();
  for (const auto& j : jobs) {
    arr.push_back(j.to_json());
    rows.push_back(job_row(j));
    if (j.state == JobState::Failed) ++failed;
    if (j.state == JobState::Done) {
      ++done;
      if (upload) uploaded.push_back(upload_record(ctx.cfg.dataset_root, *j.result).string());
    }
  }
  json out = {{"suite_id", suite_id}, {"jobs", arr}, {"done", done}, {"failed", failed},
              {"total", jobs.size()}};
  if (upload) out["uploaded"] = uploaded;
  emit(ctx, out, kJobHeader, rows);
  if (ctx.cfg.format == OutputFormat::Table) {
    ctx.out << done << "/" << jobs.size() << " done, " << failed << " failed";
    if (upload) ctx.out << ", " << uploaded.size() << " uploaded to " << ctx.cfg.dataset_root.string();
    ctx.out << "\n";
  }
  if (failed > 0 && (wait || upload)) return kExitExecution;
  if (upload && done != static_cast<int>(jobs.size())) {
    ctx.err << "warning: " << jobs.size() - done << " job(s) not finished, not uploaded\n";
    return kExitExecution;
  }
  return kExitOk;
}

// ---------------------------------------------------------------- score

std::string opt_cell(const std::optional<double>& v, int prec) { return v ? fixed(*v, prec) : "-"; }

int cmd_score_compute(const Context& ctx, const std::string& series_file, const std::string& table_file,
                      const std::string& devices_csv, const std::string& svg_file) {
  SeriesSpec series = SeriesSpec::load(series_file);
  ScoreTable t;
  if (!table_file.empty()) {
    t = score_table_from_subscores(series, load_subscore_csv(table_file));
  } else {
    ScanResult scan = scan_dataset(ctx.cfg.dataset_root, {}, nullptr);
    for (const auto& d : scan.diagnostics) ctx.err << "warning: " << d.path << ": " << d.message << "\n";
    t = compute_score_table(series, scan.records, split_list(devices_csv));
    if (fs::is_directory(ctx.cfg.device_dir)) {
      DeviceRegistry devices = load_devices(ctx.cfg);
      for (auto& r : t.rows) {
        if (!r.num_qubits && devices.contains(r.device)) r.num_qubits = devices.get(r.device).num_qubits();
      }
    }
  }
  for (const auto& w : t.warnings) ctx.err << "warning: " << w << "\n";
  if (!svg_file.empty()) {
    std::vector<std::pair<std::string, std::pair<double, double>>> pts;
    for (const auto& r : t.rows) {
      if (r.num_qubits) pts.push_back({r.device, {static_cast<double>(*r.num_qubits), r.metriq_score}});
    }
    write_text(svg_file, svg::labelled_scatter("Metriq score vs device width (" + t.series + ")",
                                               "qubits", "Metriq score", pts));
  }
  if (ctx.cfg.format == OutputFormat::Csv) {
    ctx.out << t.to_csv();
    return kExitOk;
  }
  std::vector<std::string> header = {"device", "qubits"};
  for (const auto& l : t.labels) header.push_back(l);
  header.push_back("MS");
  bool printed = std::any_of(t.rows.begin(), t.rows.end(), [](const DeviceScore& r) { return r.printed_score.has_value(); });
  if (printed) header.push_back("printed");
  Rows rows;
  for (const auto& r : t.rows) {
    std::vector<std::string> row = {r.device, r.num_qubits ? std::to_string(*r.num_qubits) : "-"};
    for (const auto& l : t.labels) row.push_back(opt_cell(r.subscore(l), 2));
    row.push_back(fixed(r.metriq_score, 2));
    if (printed) row.push_back(opt_cell(r.printed_score, 2));
    rows.push_back(std::move(row));
  }
  std::vector<std::string> wrow = {"weight", ""};
  for (const auto& l : t.labels) wrow.push_back(fixed(t.weights.at(l), 4));
  rows.push_back(wrow);
  emit(ctx, t.to_json(), header, rows);
  return kExitOk;
}

// ---------------------------------------------------------------- analyze

std::vector<std::string> csv_benchmarks(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(fs::exists(file) ? ErrorKind::Io : ErrorKind::NotFound, "cannot open " + file.string());
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto cols = split_list(line);
    std::vector<std::string> out;
    for (auto c : cols) {
      c.erase(std::remove_if(c.begin(), c.end(), ::isspace), c.end());
      if (c != "device" && c != "qubits" && c != "MS") out.push_back(c);
    }
    return out;
  }
  throw Error(ErrorKind::Validation, file.string() + ": empty table");
}

int cmd_analyze(const Context& ctx, const std::string& table_file, double lambda,
                const std::string& target, const std::string& features_csv,
                const std::string& pca_csv, const std::string& out_dir) {
  std::vector<std::string> benchmarks = csv_benchmarks(table_file);
  ScoreMatrix m = ScoreMatrix::from_rows(load_subscore_csv(table_file), benchmarks);
  auto check = [&](const std::string& b) {
    if (m.column(b) < 0) throw usage("unknown benchmark column '" + b + "'");
  };
  std::vector<std::string> features = split_list(features_csv);
  for (const auto& f : features) check(f);
  check(target);
  std::vector<std::string> pca_cols = split_list(pca_csv);
  if (pca_cols.empty()) {
    // speed metric, absent on most devices
    for (const auto& b : benchmarks) {
      if (b != "CLOPS") pca_cols.push_back(b);
    }
  }
  for (const auto& c : pca_cols) check(c);

  json rho = spearman_matrix(m);
  PcaSummary pca = pca_first_variance(m, pca_cols);
  RidgeReport ridge = ridge_loo_r2_log(m, features, target, lambda);

  Rows corr;
  std::vector<std::vector<std::optional<double>>> grid;
  for (std::size_t a = 0; a < benchmarks.size(); ++a) {
    std::vector<std::string> row = {benchmarks[a]};
    grid.emplace_back();
    for (std::size_t b = 0; b < benchmarks.size(); ++b) {
      const json& v = rho["rho"][a][b];
      row.push_back(v.is_null() ? "" : fixed(v.get<double>(), 4));
      grid.back().push_back(v.is_null() ? std::nullopt : std::optional<double>(v.get<double>()));
    }
    corr.push_back(std::move(row));
  }
  std::vector<std::string> corr_header = {"benchmark"};
  for (const auto& b : benchmarks) corr_header.push_back(b);

  if (!out_dir.empty()) {
    std::ostringstream csv;
    print_csv(csv, corr_header, corr);
    write_text(fs::path(out_dir) / "spearman.csv", csv.str());
    write_text(fs::path(out_dir) / "pca.json", pca.to_json().dump(2) + "\n");
    write_text(fs::path(out_dir) / "regression.json", ridge.to_json().dump(2) + "\n");
    write_text(fs::path(out_dir) / "spearman.svg", svg::heatmap("Spearman rank correlation", benchmarks, grid));
  }

  switch (ctx.cfg.format) {
    case OutputFormat::Csv:
      print_csv(ctx.out, corr_header, corr);
      break;
    case OutputFormat::Json:
      ctx.out << json{{"spearman", rho}, {"pca", pca.to_json()}, {"regression", ridge.to_json()}}.dump(2)
              << "\n";
      break;
    case OutputFormat::Table:
      ctx.out << "Spearman rank correlation (positive pairwise-complete entries)\n";
      print_table(ctx.out, corr_header, corr);
      ctx.out << "\nPCA first-component variance share: " << fixed(pca.first_variance, 4) << " over "
              << pca.devices.size() << " devices, columns";
      for (const auto& c : pca.columns) ctx.out << " " << c;
      ctx.out << "\nRidge LOO R^2 (log " << target << " from";
      for (const auto& f : features) ctx.out << " " << f;
      ctx.out << ", lambda " << lambda << "): " << fixed(ridge.r2_log, 4) << " over "
              << ridge.devices.size() << " devices\n";
      for (const auto& x : ridge.excluded) ctx.out << "  excluded " << x << "\n";
      break;
  }
  return kExitOk;
}

// ---------------------------------------------------------------- dataset

ScanFilter scan_filter(const Context& ctx, const std::string& source, const std::string& version,
                       const std::string& benchmark) {
  ScanFilter f;
  if (!source.empty()) f.source = source;
  if (!version.empty()) f.version = version;
  if (!ctx.raw.provider.empty()) f.provider = ctx.raw.provider;
  if (!ctx.raw.device.empty()) f.device = ctx.raw.device;
  if (!benchmark.empty()) f.benchmark = benchmark;
  return f;
}

int cmd_dataset_scan(const Context& ctx, const ScanFilter& filter, bool strict, bool validate) {
  SchemaRegistry schemas;
  if (validate) schemas = load_schemas(ctx.cfg);
  ScanResult scan = scan_dataset(ctx.cfg.dataset_root, filter, validate ? &schemas : nullptr);
  json records = json::array(), diags = json::array();
  Rows rows;
  for (const auto& r : scan.records) {
    records.push_back(r.to_json());
    rows.push_back({r.timestamp, r.provider, r.device, r.benchmark_name, r.id, record_path(r)});
  }
  for (const auto& d : scan.diagnostics) {
    diags.push_back({{"path", d.path}, {"message", d.message}});
    ctx.err << "invalid: " << d.path << ": " << d.message << "\n";
  }
  emit(ctx, {{"records", records}, {"diagnostics", diags}},
       {"timestamp", "provider", "device", "benchmark", "id", "path"}, rows);
  return strict && !scan.diagnostics.empty() ? kExitValidation : kExitOk;
}

int cmd_dataset_export(const Context& ctx, const ScanFilter& filter, const std::string& output) {
  ScanResult scan = scan_dataset(ctx.cfg.dataset_root, filter, nullptr);
  for (const auto& d : scan.diagnostics) ctx.err << "skipped: " << d.path << ": " << d.message << "\n";
  json bundle = export_bundle(scan.records);
  if (output.empty()) {
    ctx.out << bundle.dump(2) << "\n";
  } else {
    write_text(output, bundle.dump(2) + "\n");
    if (ctx.cfg.format == OutputFormat::Json) {
      ctx.out << json{{"path", output}, {"records", scan.records.size()}}.dump(2) << "\n";
    } else {
      ctx.out << scan.records.size() << " records exported to " << output << "\n";
    }
  }
  return kExitOk;
}

int cmd_worker_run(const Context& ctx) {
  FileLock lock(lock_file(ctx.cfg), true);
  std::size_t n = drain_log(ctx.cfg);
  ctx.out << n << " job(s) executed\n";
  return kExitOk;
}

int cmd_config_show(const Context& ctx) {
  json j = ctx.cfg.to_json();
  Rows rows;
  for (const auto& [k, v] : j.items()) rows.push_back({k, v.is_string() ? v.get<std::string>() : v.dump()});
  emit(ctx, j, {"setting", "value"}, rows);
  return kExitOk;
}

void report_error(const Context* ctx, std::ostream& err, const Error& e) {
  const char* kinds[] = {"usage", "validation", "execution", "io", "not_found"};
  const char* kind = kinds[static_cast<int>(e.kind())];
  std::vector<std::string> problems;
  if (auto* v = dynamic_cast<const ValidationError*>(&e)) problems = v->problems();
  if (ctx && ctx->cfg.format == OutputFormat::Json) {
    err << json{{"error", {{"kind", kind}, {"message", e.what()}, {"problems", problems},
                           {"exit_code", exit_code(e.kind())}}}}
               .dump(2)
        << "\n";
    return;
  }
  err << "error (" << kind << "): " << e.what() << "\n";
  if (problems.size() > 1 || (problems.size() == 1 && problems[0] != e.what())) {
    for (const auto& p : problems) err << "  - " << p << "\n";
  }
}

constexpr const char* kExitCodes =
    "Exit codes: 0 ok, 2 usage, 3 validation, 4 execution, 5 I/O, 6 not found.";

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const CliEnvironment& env) {
  CLI::App app{"qbench: cross-platform quantum benchmark runner", "qbench"};
  app.footer(kExitCodes);
  app.require_subcommand(1);
  RawOptions raw;
  app.add_option("--config", raw.config, "JSON config file (also QBENCH_CONFIG)");
  app.add_option("--dataset-root", raw.dataset_root, "dataset directory (also QBENCH_DATASET_ROOT)");
  app.add_option("--devices", raw.devices, "device registry directory (also QBENCH_DEVICES)");
  app.add_option("--schemas", raw.schemas, "benchmark schema directory (also QBENCH_SCHEMAS)");
  app.add_option("--provider", raw.provider, "provider name (also QBENCH_PROVIDER)");
  app.add_option("--device", raw.device, "device id or alias (also QBENCH_DEVICE)");
  app.add_option("--format", raw.format, "output format: table, json or csv (also QBENCH_FORMAT)");
  app.add_option("--seed", raw.seed, "fixed RNG seed instead of the job-id stream");
  app.add_flag("--no-worker", raw.no_worker, "do not start a background worker (also QBENCH_NO_WORKER)");

  std::string file, id, pricing, series, table, devices_csv, svg_file, out_dir, output;
  std::string target = "QML", features = "BSEQ,EPLG,MC", pca_cols, source, version, benchmark;
  bool wait = false, upload = false, strict = false, no_validate = false;
  double timeout = 3600, lambda = kDefaultRidgeLambda;

  auto sub = [](CLI::App* parent, const std::string& name, const std::string& desc) {
    CLI::App* s = parent->add_subcommand(name, desc);
    s->fallthrough();
    return s;
  };
  CLI::App* job = sub(&app, "job", "single benchmark jobs");
  job->require_subcommand(1);
  CLI::App* job_dispatch = sub(job, "dispatch", "validate a benchmark config and queue it");
  job_dispatch->add_option("config", file, "benchmark config JSON")->required();
  CLI::App* job_poll = sub(job, "poll", "job status without blocking");
  job_poll->add_option("job_id", id)->required();
  job_poll->add_flag("--wait", wait, "block until the job finishes");
  job_poll->add_option("--timeout", timeout, "seconds to wait");
  CLI::App* job_view = sub(job, "view", "full job details and results");
  job_view->add_option("job_id", id)->required();
  job_view->add_option("--svg", svg_file, "write a decay plot (EPLG)");
  CLI::App* job_estimate = sub(job, "estimate", "circuit statistics and cost before execution");
  job_estimate->add_option("config", file, "benchmark config JSON")->required();
  job_estimate->add_option("--pricing", pricing, "pricing model JSON");
  CLI::App* job_upload = sub(job, "upload", "store a finished job's record in the dataset");
  job_upload->add_option("job_id", id)->required();
  job_upload->add_flag("--wait", wait, "wait for the job first");
  job_upload->add_option("--timeout", timeout, "seconds to wait");

  CLI::App* suite = sub(&app, "suite", "benchmark suites");
  suite->require_subcommand(1);
  CLI::App* suite_dispatch = sub(suite, "dispatch", "validate every entry, then queue them all");
  suite_dispatch->add_option("suite", file, "suite JSON")->required();
  CLI::App* suite_poll = sub(suite, "poll", "status of every job in a suite");
  suite_poll->add_option("suite_id", id)->required();
  suite_poll->add_flag("--wait", wait, "block until every job finishes");
  suite_poll->add_option("--timeout", timeout, "seconds to wait");
  suite_poll->add_flag("--upload", upload, "upload finished records to the dataset");

  CLI::App* score = sub(&app, "score", "Metriq scores");
  score->require_subcommand(1);
  CLI::App* score_compute = sub(score, "compute", "score table from dataset records or a subscore table");
  score_compute->add_option("--series", series, "series definition JSON")->required();
  score_compute->add_option("--table", table, "subscore CSV instead of dataset records");
  score_compute->add_option("--devices-filter", devices_csv, "comma-separated devices to score");
  score_compute->add_option("--svg", svg_file, "write a score-vs-width plot");

  CLI::App* analyze = sub(&app, "analyze", "correlations, PCA and ridge regression over subscores");
  analyze->add_option("--table", table, "subscore CSV")->required();
  analyze->add_option("--lambda", lambda, "ridge penalty on z-scored log features");
  analyze->add_option("--target", target, "regression target column");
  analyze->add_option("--features", features, "comma-separated regression features");
  analyze->add_option("--pca-columns", pca_cols, "comma-separated PCA columns (default: all but CLOPS)");
  analyze->add_option("--out-dir", out_dir, "write spearman.csv, pca.json, regression.json, spearman.svg");

  CLI::App* dataset = sub(&app, "dataset", "local dataset");
  dataset->require_subcommand(1);
  CLI::App* dataset_scan = sub(dataset, "scan", "list and verify records");
  CLI::App* dataset_export = sub(dataset, "export", "bundle records for display");
  for (CLI::App* s : {dataset_scan, dataset_export}) {
    s->add_option("--source", source);
    s->add_option("--version", version);
    s->add_option("--benchmark", benchmark, "benchmark name or type slug");
  }
  dataset_scan->add_flag("--strict", strict, "exit 3 when any file is invalid");
  dataset_scan->add_flag("--no-validate", no_validate, "skip schema validation of params");
  dataset_export->add_option("--output,-o", output, "write the bundle to a file");

  CLI::App* config = sub(&app, "config", "settings");
  config->require_subcommand(1);
  CLI::App* config_show = sub(config, "show", "print the resolved settings");

  CLI::App* worker = sub(&app, "worker", "");
  worker->group("");  // internal: started by dispatch
  worker->require_subcommand(1);
  CLI::App* worker_run = sub(worker, "run", "drain the job queue");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error (usage): " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  std::optional<Context> ctx;
  try {
    ctx.emplace(Context{resolve_config(raw, env), raw, env, out, err});
    const Context& c = *ctx;
    if (job_dispatch->parsed()) return cmd_job_dispatch(c, file);
    if (job_poll->parsed()) return cmd_job_poll(c, id, wait, timeout);
    if (job_view->parsed()) return cmd_job_view(c, id, svg_file);
    if (job_estimate->parsed()) return cmd_job_estimate(c, file, pricing);
    if (job_upload->parsed()) return cmd_job_upload(c, id, wait, timeout);
    if (suite_dispatch->parsed()) return cmd_suite_dispatch(c, file);
    if (suite_poll->parsed()) return cmd_suite_poll(c, id, wait, timeout, upload);
    if (score_compute->parsed()) return cmd_score_compute(c, series, table, devices_csv, svg_file);
    if (analyze->parsed()) return cmd_analyze(c, table, lambda, target, features, pca_cols, out_dir);
    if (dataset_scan->parsed()) {
      return cmd_dataset_scan(c, scan_filter(c, source, version, benchmark), strict, !no_validate);
    }
    if (dataset_export->parsed()) return cmd_dataset_export(c, scan_filter(c, source, version, benchmark), output);
    if (config_show->parsed()) return cmd_config_show(c);
    if (worker_run->parsed()) return cmd_worker_run(c);
    err << app.help();
    return kExitUsage;
  } catch (const Error& e) {
    report_error(ctx ? &*ctx : nullptr, err, e);
    if (e.kind() == ErrorKind::Usage) err << "\n" << app.help();
    return exit_code(e.kind());
  } catch (const fs::filesystem_error& e) {
    report_error(ctx ? &*ctx : nullptr, err, io_error(e.what()));
    return kExitIo;
  } catch (const json::exception& e) {
    report_error(ctx ? &*ctx : nullptr, err, Error(ErrorKind::Validation, e.what()));
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    report_error(ctx ? &*ctx : nullptr, err, Error(ErrorKind::Validation, e.what()));
    return kExitValidation;
  } catch (const std::exception& e) {
    report_error(ctx ? &*ctx : nullptr, err, execution_error(e.what()));
    return kExitExecution;
  }
}

}  // namespace qbench
