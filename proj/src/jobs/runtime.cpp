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
#include "qbench/jobs/runtime.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>

#include "qbench/common/error.hpp"
#include "qbench/common/rng.hpp"
#include "qbench/jobs/execute.hpp"

namespace qbench {

std::string to_string(JobState s) {
  switch (s) {
    case JobState::Queued: return "queued";
    case JobState::Running: return "running";
    case JobState::Done: return "done";
    case JobState::Failed: return "failed";
  }
  return "?";
}

JobState job_state_from_string(const std::string& s) {
  if (s == "queued") return JobState::Queued;
  if (s == "running") return JobState::Running;
  if (s == "done") return JobState::Done;
  if (s == "failed") return JobState::Failed;
  throw Error(ErrorKind::Validation, "unknown job state " + s);
}

bool is_terminal(JobState s) { return s == JobState::Done || s == JobState::Failed; }

namespace {

std::string now_iso_ms() {
  using namespace std::chrono;
  auto now = system_clock::now();
  auto ms = duration_cast<milliseconds>(now.time_since_epoch()).count() % 1000;
  std::time_t t = system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", tm.tm_year + 1900,
                tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec, static_cast<int>(ms));
  return buf;
}

void check_transition(JobState from, JobState to) {
  bool ok = (from == JobState::Queued && to == JobState::Running) ||
            (from == JobState::Running && (to == JobState::Done || to == JobState::Failed)) ||
            // a worker that died mid-run leaves the job running; the next one restarts it
            (from == JobState::Running && to == JobState::Running);
  if (!ok) {
    throw std::logic_error("job transition " + to_string(from) + " -> " + to_string(to));
  }
}

}  // namespace

json Job::to_json() const {
  return {{"job_id", job_id},
          {"suite_id", suite_id},
          {"benchmark_name", benchmark_name},
          {"params", params},
          {"provider", provider},
          {"device", device},
          {"device_fingerprint", device_fingerprint},
          {"seed", std::to_string(seed)},
          {"state", to_string(state)},
          {"dispatch_data", dispatch_data},
          {"result", result ? result->to_json() : json(nullptr)},
          {"error", error},
          {"timestamps", timestamps}};
}

Job Job::from_json(const json& j) {
  Job job;
  job.job_id = j.at("job_id").get<std::string>();
  job.suite_id = j.value("suite_id", std::string());
  job.benchmark_name = j.at("benchmark_name").get<std::string>();
  job.params = j.at("params");
  job.provider = j.at("provider").get<std::string>();
  job.device = j.at("device").get<std::string>();
  job.device_fingerprint = j.value("device_fingerprint", std::string());
  job.seed = std::stoull(j.at("seed").get<std::string>());
  job.state = job_state_from_string(j.value("state", std::string("queued")));
  job.dispatch_data = j.value("dispatch_data", json::object());
  if (j.contains("result") && !j.at("result").is_null()) {
    job.result = BenchmarkRecord::from_json(j.at("result"));
  }
  job.error = j.value("error", std::string());
  job.timestamps = j.value("timestamps", std::map<std::string, std::string>{});
  return job;
}

SuiteSpec SuiteSpec::from_json(const json& j) {
  SuiteSpec s;
  s.name = j.value("name", std::string("suite"));
  if (!j.contains("benchmarks") || !j.at("benchmarks").is_array()) {
    throw ValidationError({"/benchmarks: suite needs an array of benchmark entries"});
  }
  for (const auto& e : j.at("benchmarks")) s.entries.push_back(e);
  if (s.entries.empty()) throw ValidationError({"/benchmarks: suite is empty"});
  return s;
}

SuiteSpec SuiteSpec::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw io_error("cannot open suite file " + file.string());
  try {
    return from_json(json::parse(in));
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Validation, file.string() + ": " + e.what());
  }
}

json SuiteDispatch::to_json() const {
  return {{"suite_id", suite_id}, {"device_fingerprint", device_fingerprint}, {"job_ids", job_ids}};
}

std::string new_job_id() {
  static thread_local std::mt19937_64 rng = [] {
    std::random_device rd;
    std::seed_seq seq{rd(), rd(), rd(), rd(), static_cast<unsigned>(::getpid()),
                      static_cast<unsigned>(std::chrono::steady_clock::now().time_since_epoch().count())};
    return std::mt19937_64(seq);
  }();
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(rng()));
  return buf;
}

// ---------------------------------------------------------------- JobLog

JobLog::JobLog(std::filesystem::path path) : path_(std::move(path)) {}

void JobLog::append(const json& event) const {
  if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
  std::string line = event.dump() + "\n";
  int fd = ::open(path_.c_str(), O_WRONLY | O_APPEND | O_CREAT | O_CLOEXEC, 0644);
  if (fd < 0) throw io_error("cannot open job log " + path_.string() + ": " + std::strerror(errno));
  ::flock(fd, LOCK_EX);
  const char* p = line.data();
  std::size_t left = line.size();
  while (left > 0) {
    ssize_t n = ::write(fd, p, left);
    if (n < 0 && errno == EINTR) continue;
    if (n < 0) {
      int err = errno;
      ::flock(fd, LOCK_UN);
      ::close(fd);
      throw io_error("job log write failed: " + std::string(std::strerror(err)));
    }
    p += n;
    left -= static_cast<std::size_t>(n);
  }
  ::fsync(fd);
  ::flock(fd, LOCK_UN);
  ::close(fd);
}

std::vector<json> JobLog::events() const {
  std::vector<json> out;
  int fd = ::open(path_.c_str(), O_RDONLY | O_CLOEXEC);
  if (fd < 0) {
    if (errno == ENOENT) return out;
    throw io_error("cannot open job log " + path_.string());
  }
  ::flock(fd, LOCK_SH);
  std::string data;
  char buf[1 << 16];
  for (;;) {
    ssize_t n = ::read(fd, buf, sizeof buf);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) break;
    data.append(buf, static_cast<std::size_t>(n));
  }
  ::flock(fd, LOCK_UN);
  ::close(fd);
  std::istringstream in(data);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json e = json::parse(line, nullptr, false);
    if (!e.is_discarded() && e.is_object()) out.push_back(std::move(e));
  }
  return out;
}

json JobLog::dispatched_event(const Job& job) {
  return {{"event", "dispatched"}, {"job", job.to_json()}};
}

json JobLog::state_event(const Job& job) {
  json e = {{"event", "state"},
            {"job_id", job.job_id},
            {"state", to_string(job.state)},
            {"at", job.timestamps.count(to_string(job.state)) ? job.timestamps.at(to_string(job.state))
                                                               : std::string()}};
  if (job.result) e["record"] = job.result->to_json();
  if (!job.error.empty()) e["error"] = job.error;
  return e;
}

std::vector<Job> JobLog::replay() const {
  std::map<std::string, Job> jobs;
  std::vector<std::string> order;
  for (const auto& e : events()) {
    try {
      std::string kind = e.at("event").get<std::string>();
      if (kind == "dispatched") {
        Job j = Job::from_json(e.at("job"));
        if (jobs.count(j.job_id)) continue;
        order.push_back(j.job_id);
        jobs.emplace(j.job_id, std::move(j));
      } else if (kind == "state") {
        auto it = jobs.find(e.at("job_id").get<std::string>());
        if (it == jobs.end()) continue;
        Job& j = it->second;
        JobState to = job_state_from_string(e.at("state").get<std::string>());
        check_transition(j.state, to);
        if (to == JobState::Done) {
          BenchmarkRecord r = BenchmarkRecord::from_json(e.at("record"));
          if (r.compute_hash() != r.id) continue;
          j.result = std::move(r);
        }
        if (to == JobState::Failed) j.error = e.value("error", std::string("failed"));
        j.state = to;
        j.timestamps[to_string(to)] = e.value("at", std::string());
      }
    } catch (const std::exception&) {
      continue;  // malformed or out-of-order event
    }
  }
  std::vector<Job> out;
  for (const auto& id : order) out.push_back(std::move(jobs.at(id)));
  return out;
}

// ---------------------------------------------------------------- FileLock

FileLock::FileLock(const std::filesystem::path& file, bool wait) {
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  fd_ = ::open(file.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
  if (fd_ < 0) throw io_error("cannot open lock file " + file.string());
  int rc;
  do {
    rc = ::flock(fd_, LOCK_EX | (wait ? 0 : LOCK_NB));
  } while (rc != 0 && errno == EINTR);
  if (rc != 0) {
    ::close(fd_);
    fd_ = -1;
    if (wait) throw io_error("cannot lock " + file.string());
  }
}

FileLock::~FileLock() {
  if (fd_ >= 0) {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
}

// ---------------------------------------------------------------- JobRuntime

JobRuntime::JobRuntime(DeviceRegistry devices, SchemaRegistry schemas, RuntimeOptions options)
    : devices_(std::move(devices)), schemas_(std::move(schemas)), options_(std::move(options)) {
  if (options_.workers < 1) throw std::invalid_argument("runtime needs at least one worker");
  if (options_.log_path) log_.emplace(*options_.log_path);
  if (options_.autostart) start();
}

JobRuntime::~JobRuntime() {
  {
    std::lock_guard<std::mutex> lk(mu_);
    stopping_ = true;
  }
  cv_.notify_all();
  for (auto& t : threads_) t.join();
}

void JobRuntime::log(const json& event) const {
  if (log_) log_->append(event);
}

Job JobRuntime::make_job(const json& params, const DeviceModel& device,
                         std::optional<std::uint64_t> seed, const std::string& suite_id) {
  Job job;
  job.job_id = new_job_id();
  job.suite_id = suite_id;
  job.params = schemas_.validate(params);
  job.benchmark_name = job.params.at("benchmark_name").get<std::string>();
  job.provider = device.provider;
  job.device = device.device_id;
  job.device_fingerprint = device.fingerprint();
  job.seed = seed ? *seed : job_seed(job.job_id);
  // latency ~ Exp(mean = per-circuit overhead x multiplier), from the job's own stream
  double mean = device.timing ? device.timing->overhead_seconds * options_.service_multiplier : 0.0;
  double delay = 0.0;
  if (mean > 0.0) {
    Rng rng(derive_seed(job.seed, "queue"));
    delay = -mean * std::log1p(-uniform01(rng));
  }
  job.timestamps["queued"] = now_iso_ms();
  job.dispatch_data = {{"benchmark_name", job.benchmark_name},
                       {"benchmark_type", benchmark_type(job.benchmark_name)},
                       {"provider", job.provider},
                       {"device", job.device},
                       {"device_fingerprint", job.device_fingerprint},
                       {"queue_delay_seconds", delay},
                       {"dispatched_at", job.timestamps["queued"]}};
  if (!suite_id.empty()) job.dispatch_data["suite_id"] = suite_id;
  return job;
}

void JobRuntime::enqueue_locked(Job job) {
  std::string id = job.job_id;
  queues_[job.device].push_back(id);
  dispatch_order_.push_back(id);
  jobs_.emplace(id, std::move(job));
  ++pending_;
}

std::string JobRuntime::dispatch(const json& params, const std::string& provider,
                                 const std::string& device, std::optional<std::uint64_t> seed) {
  if (!devices_.contains(device)) throw Error(ErrorKind::NotFound, "unknown device " + device);
  const DeviceModel& dev = devices_.get(device, provider);
  Job job = make_job(params, dev, seed, "");
  std::string id = job.job_id;
  log(JobLog::dispatched_event(job));
  {
    std::lock_guard<std::mutex> lk(mu_);
    enqueue_locked(std::move(job));
  }
  cv_.notify_all();
  return id;
}

SuiteDispatch JobRuntime::dispatch_suite(const SuiteSpec& suite, const std::string& provider,
                                         const std::string& device,
                                         std::optional<std::uint64_t> seed) {
  if (!devices_.contains(device)) throw Error(ErrorKind::NotFound, "unknown device " + device);
  const DeviceModel& dev = devices_.get(device, provider);
  std::vector<std::string> problems;
  for (std::size_t i = 0; i < suite.entries.size(); ++i) {
    try {
      schemas_.validate(suite.entries[i]);
    } catch (const ValidationError& e) {
      for (const auto& p : e.problems()) problems.push_back("entry " + std::to_string(i) + ": " + p);
    } catch (const Error& e) {
      problems.push_back("entry " + std::to_string(i) + ": " + e.what());
    }
  }
  if (!problems.empty()) throw ValidationError(problems);

  SuiteDispatch out;
  out.suite_id = new_job_id();
  out.device_fingerprint = dev.fingerprint();
  std::vector<Job> batch;
  for (std::size_t i = 0; i < suite.entries.size(); ++i) {
    std::optional<std::uint64_t> s;
    if (seed) s = derive_seed(*seed, i);
    batch.push_back(make_job(suite.entries[i], dev, s, out.suite_id));
    batch.back().dispatch_data["suite_name"] = suite.name;
    out.job_ids.push_back(batch.back().job_id);
  }
  for (const auto& j : batch) log(JobLog::dispatched_event(j));
  {
    std::lock_guard<std::mutex> lk(mu_);
    for (auto& j : batch) enqueue_locked(std::move(j));
  }
  cv_.notify_all();
  return out;
}

Job JobRuntime::poll(const std::string& job_id) const {
  std::lock_guard<std::mutex> lk(mu_);
  auto it = jobs_.find(job_id);
  if (it == jobs_.end()) throw Error(ErrorKind::NotFound, "unknown job " + job_id);
  return it->second;
}

std::vector<Job> JobRuntime::jobs() const {
  std::lock_guard<std::mutex> lk(mu_);
  std::vector<Job> out;
  for (const auto& id : dispatch_order_) out.push_back(jobs_.at(id));
  return out;
}

std::vector<std::string> JobRuntime::completion_order() const {
  std::lock_guard<std::mutex> lk(mu_);
  return completed_;
}

void JobRuntime::adopt(const std::vector<Job>& recovered) {
  {
    std::lock_guard<std::mutex> lk(mu_);
    for (Job j : recovered) {
      if (jobs_.count(j.job_id)) continue;
      if (is_terminal(j.state)) {
        dispatch_order_.push_back(j.job_id);
        jobs_.emplace(j.job_id, std::move(j));
        continue;
      }
      if (!devices_.contains(j.device)) {
        if (j.state == JobState::Queued) {
          j.state = JobState::Running;
          j.timestamps["running"] = now_iso_ms();
          log(JobLog::state_event(j));
        }
        j.state = JobState::Failed;
        j.error = "device " + j.device + " is no longer registered";
        j.timestamps["failed"] = now_iso_ms();
        log(JobLog::state_event(j));
        dispatch_order_.push_back(j.job_id);
        jobs_.emplace(j.job_id, std::move(j));
        continue;
      }
      enqueue_locked(std::move(j));
    }
  }
  cv_.notify_all();
}

std::optional<std::string> JobRuntime::take_locked() {
  // oldest queued job among idle devices
  std::optional<std::string> best;
  std::size_t best_pos = SIZE_MAX;
  for (auto& [dev, q] : queues_) {
    if (q.empty() || busy_.count(dev)) continue;
    auto pos = static_cast<std::size_t>(
        std::find(dispatch_order_.begin(), dispatch_order_.end(), q.front()) -
        dispatch_order_.begin());
    if (pos < best_pos) {
      best_pos = pos;
      best = dev;
    }
  }
  if (!best) return std::nullopt;
  std::string id = queues_[*best].front();
  queues_[*best].pop_front();
  busy_.insert(*best);
  Job& job = jobs_.at(id);
  check_transition(job.state, JobState::Running);
  job.state = JobState::Running;
  job.timestamps["running"] = now_iso_ms();
  return id;
}

void JobRuntime::execute(const std::string& job_id) {
  Job snapshot;
  {
    std::lock_guard<std::mutex> lk(mu_);
    snapshot = jobs_.at(job_id);
  }
  log(JobLog::state_event(snapshot));
  double delay = snapshot.dispatch_data.value("queue_delay_seconds", 0.0);
  if (options_.time_scale > 0.0 && delay > 0.0) {
    std::this_thread::sleep_for(std::chrono::duration<double>(delay * options_.time_scale));
  }

  std::optional<BenchmarkRecord> record;
  std::string error;
  try {
    const DeviceModel& dev = devices_.get(snapshot.device);
    if (dev.fingerprint() != snapshot.device_fingerprint) {
      throw execution_error("device model changed since dispatch (fingerprint " +
                            snapshot.device_fingerprint + " -> " + dev.fingerprint() + ")");
    }
    record = run_benchmark(snapshot.params, dev, snapshot.seed);
  } catch (const std::exception& e) {
    error = e.what();
    if (error.empty()) error = "execution failed";
  }

  json event;
  {
    std::lock_guard<std::mutex> lk(mu_);
    Job& job = jobs_.at(job_id);
    JobState to = record ? JobState::Done : JobState::Failed;
    check_transition(job.state, to);
    job.state = to;
    job.result = std::move(record);
    job.error = error;
    job.timestamps[to_string(to)] = now_iso_ms();
    event = JobLog::state_event(job);
  }
  try {
    log(event);
  } catch (const std::exception&) {
    // the in-memory state stays authoritative for this process
  }
  {
    std::lock_guard<std::mutex> lk(mu_);
    completed_.push_back(job_id);
    busy_.erase(jobs_.at(job_id).device);
    --pending_;
  }
  cv_.notify_all();
}

void JobRuntime::worker_loop() {
  for (;;) {
    std::string id;
    {
      std::unique_lock<std::mutex> lk(mu_);
      std::optional<std::string> next;
      cv_.wait(lk, [&] {
        if (stopping_) return true;
        next = take_locked();
        return next.has_value();
      });
      if (!next) return;
      id = *next;
    }
    execute(id);
  }
}

void JobRuntime::start() {
  std::lock_guard<std::mutex> lk(mu_);
  if (!threads_.empty()) return;
  for (int i = 0; i < options_.workers; ++i) threads_.emplace_back([this] { worker_loop(); });
}

std::size_t JobRuntime::drain() {
  std::size_t n = 0;
  for (;;) {
    std::optional<std::string> id;
    {
      std::lock_guard<std::mutex> lk(mu_);
      id = take_locked();
    }
    if (!id) return n;
    execute(*id);
    ++n;
  }
}

bool JobRuntime::wait(const std::string& job_id, std::chrono::milliseconds timeout) const {
  std::unique_lock<std::mutex> lk(mu_);
  if (!jobs_.count(job_id)) throw Error(ErrorKind::NotFound, "unknown job " + job_id);
  return cv_.wait_for(lk, timeout, [&] { return is_terminal(jobs_.at(job_id).state); });
}

void JobRuntime::wait_all() const {
  std::unique_lock<std::mutex> lk(mu_);
  cv_.wait(lk, [&] { return pending_ == 0; });
}

}  // namespace qbench
