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
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace qbench {

using json = nlohmann::json;

enum class GateKind {
  H, X, Y, Z, S, Sdg,
  CX, CZ, Swap,
  RX, RY, RZ, RZZ, R,
  ISwap,
  Reset, Measure, Barrier,
};

struct GateInfo {
  std::string_view name;
  int arity;       // -1: any number of qubits (barrier)
  int num_params;
  bool clifford;   // in the stabilizer-simulable set
  bool unitary;    // false for reset / measure / barrier
};

const GateInfo& gate_info(GateKind kind);
std::optional<GateKind> gate_kind_from_name(std::string_view name);

struct GateOp {
  GateKind kind;
  std::vector<int> qubits;
  std::vector<double> params;
  int clbit = -1;  // measure only

  std::string_view name() const { return gate_info(kind).name; }
  bool is_two_qubit() const { return gate_info(kind).arity == 2; }
  bool is_unitary() const { return gate_info(kind).unitary; }
  bool operator==(const GateOp& other) const = default;
};

struct GateCounts {
  std::int64_t one_qubit = 0;
  std::int64_t two_qubit = 0;
  std::int64_t measure = 0;
  std::int64_t reset = 0;
};

class Circuit {
 public:
  explicit Circuit(int num_qubits = 0);

  int num_qubits() const { return num_qubits_; }
  int num_clbits() const { return num_clbits_; }
  const std::vector<GateOp>& ops() const { return ops_; }
  json& metadata() { return metadata_; }
  const json& metadata() const { return metadata_; }

  /// Appends after checking arity, qubit range, angle finiteness and clbit use.
  Circuit& append(GateOp op);

  Circuit& h(int q) { return gate1(GateKind::H, q); }
  Circuit& x(int q) { return gate1(GateKind::X, q); }
  Circuit& y(int q) { return gate1(GateKind::Y, q); }
  Circuit& z(int q) { return gate1(GateKind::Z, q); }
  Circuit& s(int q) { return gate1(GateKind::S, q); }
  Circuit& sdg(int q) { return gate1(GateKind::Sdg, q); }
  Circuit& rx(int q, double theta) { return gate1(GateKind::RX, q, {theta}); }
  Circuit& ry(int q, double theta) { return gate1(GateKind::RY, q, {theta}); }
  Circuit& rz(int q, double theta) { return gate1(GateKind::RZ, q, {theta}); }
  /// Rotation by theta about cos(phi) X + sin(phi) Y.
  Circuit& r(int q, double theta, double phi) { return gate1(GateKind::R, q, {theta, phi}); }
  Circuit& cx(int c, int t) { return gate2(GateKind::CX, c, t); }
  Circuit& cz(int a, int b) { return gate2(GateKind::CZ, a, b); }
  Circuit& swap(int a, int b) { return gate2(GateKind::Swap, a, b); }
  Circuit& iswap(int a, int b) { return gate2(GateKind::ISwap, a, b); }
  Circuit& rzz(int a, int b, double theta) { return gate2(GateKind::RZZ, a, b, {theta}); }
  Circuit& reset(int q) { return gate1(GateKind::Reset, q); }
  /// Measures \p q into \p clbit, or into the next free classical bit.
  Circuit& measure(int q, int clbit = -1);
  Circuit& measure_all();
  /// Barrier across \p qubits, or across the whole register when empty.
  Circuit& barrier(std::vector<int> qubits = {});

  void validate() const;
  GateCounts counts() const;
  bool is_clifford() const;
  bool has_reset() const;
  /// measured_qubits()[c] is the qubit recorded in classical bit c (-1 if unused).
  std::vector<int> measured_qubits() const;

  /// Inverse of the unitary part; measurements and resets are rejected.
  Circuit inverse() const;

  json to_json() const;
  static Circuit from_json(const json& j);

 private:
  Circuit& gate1(GateKind k, int q, std::vector<double> params = {});
  Circuit& gate2(GateKind k, int a, int b, std::vector<double> params = {});

  int num_qubits_;
  int num_clbits_ = 0;
  std::vector<GateOp> ops_;
  std::vector<bool> clbit_used_;
  json metadata_ = json::object();
};

/// Inverse of a single unitary gate (may expand iswap into two ops).
std::vector<GateOp> inverse_ops(const GateOp& op);

}  // namespace qbench
