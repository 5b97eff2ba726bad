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

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "qbench/circuit/circuit.hpp"
#include "qbench/circuit/device.hpp"
#include "qbench/dataset/record.hpp"

namespace qbench {

using json = nlohmann::json;

/// RNG stream of a job: a hash of its id, so jobs never share streams.
std::uint64_t job_seed(const std::string& job_id);

/// Runs the benchmark named in \p params (already validated, defaults filled)
/// and returns the results object stored in the record.
json execute_benchmark(const json& params, const DeviceModel& device, std::uint64_t seed);

/// Seals a record with provenance {seed, engine_version, device_fingerprint}.
BenchmarkRecord make_record(const json& params, json results, const DeviceModel& device,
                            std::uint64_t seed, std::string timestamp = {});

/// Synchronous execution; the reference the job runtime must reproduce.
BenchmarkRecord run_benchmark(const json& params, const DeviceModel& device, std::uint64_t seed,
                              std::string timestamp = {});

// ---------------------------------------------------------------- cost

enum class PricingKind { PerTaskShot, Hqc, Runtime };

struct PricingModel {
  PricingKind kind = PricingKind::PerTaskShot;
  std::string currency = "USD";
  // per_task_shot
  double per_task = 0.0;
  double per_shot = 0.0;
  // hqc: base + (w1q N1q + w2q N2q + wmeas Nmeas) * shots / shot_divisor, per task
  double hqc_base = 0.0;
  double hqc_w1q = 0.0;
  double hqc_w2q = 0.0;
  double hqc_wmeas = 0.0;
  double hqc_shot_divisor = 1.0;
  std::optional<double> per_hqc;
  // runtime
  double per_second = 0.0;

  json to_json() const;
  /// Throws ValidationError naming every missing or invalid field.
  static PricingModel from_json(const json& j);
  static PricingModel load(const std::filesystem::path& file);
};

/// Credits of one task under the HQC formula.
double hqc_credits(const PricingModel& pricing, const GateCounts& counts, std::int64_t shots);

struct CostEstimate {
  std::int64_t tasks = 0;
  std::int64_t total_shots = 0;
  std::int64_t n1q = 0;  // summed over tasks, not shots
  std::int64_t n2q = 0;
  std::int64_t nmeas = 0;
  std::optional<double> hqc;
  std::optional<double> cost;
  std::optional<double> runtime_seconds;  // requires a device timing model
  std::string currency;

  json to_json() const;
};

/// Builds every circuit the benchmark would submit, without simulating, and
/// applies \p pricing when given.
CostEstimate estimate_cost(const json& params, const DeviceModel& device, std::uint64_t seed,
                           const std::optional<PricingModel>& pricing = std::nullopt);

}  // namespace qbench
