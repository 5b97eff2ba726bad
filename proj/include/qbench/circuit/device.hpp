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
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "qbench/circuit/circuit.hpp"
#include "qbench/circuit/graph.hpp"
#include "qbench/common/rng.hpp"

namespace qbench {

using json = nlohmann::json;

struct NoiseProfile {
  double p1 = 0.0;           // single-qubit depolarizing probability
  double p2 = 0.0;           // two-qubit depolarizing probability
  double readout_eps = 0.0;  // symmetric bit-flip probability at measurement
  std::map<Edge, double> p2_overrides;

  double two_qubit_error(int a, int b) const;
  bool noiseless() const;
  void validate() const;
  /// Relabels qubits: \p to_physical[i] is the physical index of local qubit i.
  NoiseProfile restricted(const std::vector<int>& to_physical) const;

  json to_json() const;
  static NoiseProfile from_json(const json& j);
};

struct TimingModel {
  std::map<std::string, double> gate_seconds;  // by gate name; "measure" included
  double overhead_seconds = 0.0;               // per submitted circuit
  double compile_seconds = 0.0;                // per compiled circuit template

  double duration(const GateOp& op) const;
  /// Critical-path duration: per-qubit timelines, barriers synchronize.
  double circuit_duration(const Circuit& c) const;

  json to_json() const;
  static TimingModel from_json(const json& j);
};

struct DeviceModel {
  std::string device_id;
  std::string provider = "local";
  std::vector<std::string> aliases;
  Graph coupling;
  NoiseProfile noise;
  std::optional<TimingModel> timing;
  std::set<std::string> basis_gates;

  int num_qubits() const { return coupling.num_vertices(); }
  bool all_to_all() const;
  /// Short content hash of the full model; identifies a calibration snapshot.
  std::string fingerprint() const;

  json to_json() const;
  static DeviceModel from_json(const json& j);
  static DeviceModel load(const std::filesystem::path& file);
};

class DeviceRegistry {
 public:
  /// Loads every *.json file in \p dir.
  static DeviceRegistry load_directory(const std::filesystem::path& dir);

  void add(DeviceModel device);
  /// Looks up by device_id or alias; optionally requires a provider match.
  const DeviceModel& get(const std::string& name, const std::string& provider = "") const;
  bool contains(const std::string& name) const;
  std::vector<std::string> ids() const;

 private:
  std::map<std::string, DeviceModel> devices_;
  std::map<std::string, std::string> alias_;
};

class ChainNotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kChainRestarts = 1000;

/// Random simple path of \p n qubits: start from a random edge, then keep
/// appending random unused neighbours at either end. Restarts on dead ends.
std::vector<int> sample_random_chain(const Graph& g, int n, std::uint64_t seed,
                                     int max_restarts = kChainRestarts);

/// Connected set of \p n vertices grown breadth-first from a random start.
std::vector<int> sample_connected_region(const Graph& g, int n, Rng& rng);

}  // namespace qbench
