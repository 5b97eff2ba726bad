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

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "qbench/circuit/device.hpp"
#include "qbench/dataset/record.hpp"
#include "qbench/dataset/schema.hpp"

namespace qbench {

using json = nlohmann::json;

enum class JobState { Queued, Running, Done, Failed };

std::string to_string(JobState s);
JobState job_state_from_string(const std::string& s);
bool is_terminal(JobState s);

struct Job {
  std::string job_id;
  std::string suite_id;  // empty for single dispatches
  std::string benchmark_name;
  json params = json::object();  // validated, defaults filled
  std::string provider;
  std::string device;
  std::string device_fingerprint;
  std::uint64_t seed = 0;
  JobState state = JobState::Queued;
  json dispatch_data = json::object();
  std::optional<BenchmarkRecord> result;  // present iff done
  std::string error;                      // set iff failed
  std::map<std::string, std::string> timestamps;  // state name -> ISO time

  json to_json() const;
  static Job from_json(const json& j);
};

struct SuiteSpec {
  std::string name;
  std::vector<json> entries;  // benchmark params, each naming its benchmark

  static SuiteSpec from_json(const json& j);
  static SuiteSpec load(const std::filesystem::path& file);
};

struct SuiteDispatch {
  std::string suite_id;
  std::string device_fingerprint;
  std::vector<std::string> job_ids;

  json to_json() const;
};

/// Random 16-hex-digit identifier.
std::string new_job_id();

/// Append-only JSON-lines log. Every append is one write(2) under an exclusive
/// flock, so concurrent processes interleave whole lines; a torn final line
/// left by an interrupted writer is skipped on replay.
class JobLog {
 public:
  explicit JobLog(std::filesystem::path path);

  const std::filesystem::path& path() const { return path_; }
  void append(const json& event) const;
  std::vector<json> events() const;
  /// Folds the events into job snapshots, in dispatch order. Events that
  /// break the state machine are ignored.
  std::vector<Job> replay() const;

  static json dispatched_event(const Job& job);
  static json state_event(const Job& job);

 private:
  std::filesystem::path path_;
};

/// Exclusive advisory lock on a file, released on destruction.
class FileLock {
 public:
  /// Blocks until acquired, or gives up at once when \p wait is false.
  FileLock(const std::filesystem::path& file, bool wait);
  ~FileLock();
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;
  bool locked() const { return fd_ >= 0; }

 private:
  int fd_ = -1;
};

struct RuntimeOptions {
  int workers = 2;                  // bounded pool shared by all devices
  bool autostart = true;            // start workers on construction
  double service_multiplier = 1.0;  // scales the simulated queue latency
  double time_scale = 0.0;          // real seconds slept per simulated second
  std::optional<std::filesystem::path> log_path;
};

/// Dispatch/poll over simulated devices. Each device is a single FIFO server;
/// the worker pool never runs two jobs of one device at once.
class JobRuntime {
 public:
  JobRuntime(DeviceRegistry devices, SchemaRegistry schemas, RuntimeOptions options = {});
  ~JobRuntime();
  JobRuntime(const JobRuntime&) = delete;
  JobRuntime& operator=(const JobRuntime&) = delete;

  /// Validates, queues and returns at once. \p seed overrides the job stream.
  std::string dispatch(const json& params, const std::string& provider, const std::string& device,
                       std::optional<std::uint64_t> seed = std::nullopt);
  /// Validates every entry before queueing any; all jobs share one device
  /// fingerprint. Entry i uses derive_seed(seed, i) when a seed is given.
  SuiteDispatch dispatch_suite(const SuiteSpec& suite, const std::string& provider,
                               const std::string& device,
                               std::optional<std::uint64_t> seed = std::nullopt);

  Job poll(const std::string& job_id) const;
  std::vector<Job> jobs() const;
  /// Job ids in the order they reached done or failed.
  std::vector<std::string> completion_order() const;

  /// Queues jobs recovered from a log; jobs left running by a dead worker
  /// are run again.
  void adopt(const std::vector<Job>& jobs);

  void start();
  /// Runs queued jobs on the calling thread until none are left; returns the
  /// number executed. Use with autostart off.
  std::size_t drain();
  bool wait(const std::string& job_id,
            std::chrono::milliseconds timeout = std::chrono::hours(24)) const;
  void wait_all() const;

  const DeviceRegistry& devices() const { return devices_; }
  const SchemaRegistry& schemas() const { return schemas_; }

 private:
  Job make_job(const json& params, const DeviceModel& device, std::optional<std::uint64_t> seed,
               const std::string& suite_id);
  void enqueue_locked(Job job);
  std::optional<std::string> take_locked();
  void execute(const std::string& job_id);
  void worker_loop();
  void log(const json& event) const;

  DeviceRegistry devices_;
  SchemaRegistry schemas_;
  RuntimeOptions options_;
  std::optional<JobLog> log_;

  mutable std::mutex mu_;
  mutable std::condition_variable cv_;
  std::map<std::string, Job> jobs_;
  std::vector<std::string> dispatch_order_;
  std::map<std::string, std::deque<std::string>> queues_;  // device id -> FIFO
  std::set<std::string> busy_;
  std::vector<std::string> completed_;
  std::size_t pending_ = 0;
  bool stopping_ = false;
  std::vector<std::thread> threads_;
};

}  // namespace qbench
