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
#include <string>
#include <vector>

#include "qbench/circuit/circuit.hpp"
#include "qbench/sim/pauli.hpp"

namespace qbench {

/// One randomized mirror circuit: random single-qubit Cliffords (preparing
/// Pauli eigenstates), d Clifford layers, a central Pauli Q, then the exact
/// inverse of everything before Q. Ops use local qubits 0..width-1.
struct MirrorCircuitSpec {
  int width = 0;
  int num_layers = 0;
  double two_qubit_gate_prob = 0.0;
  std::vector<int> qubits;  // local qubit i runs on device qubit qubits[i]
  std::vector<GateOp> prep;
  std::vector<std::vector<GateOp>> layers;
  PauliString central;
  std::uint64_t seed = 0;

  /// prep followed by every layer.
  std::vector<GateOp> forward_ops() const;
  /// Inverse of forward_ops(), in execution order.
  std::vector<GateOp> mirror_ops() const;
  /// Device-register circuit measuring qubits[i] into classical bit i.
  Circuit to_circuit(int device_qubits) const;
};

/// Unique noiseless outcome of the spec's circuit, character i for local qubit i.
/// Throws std::invalid_argument if a layer is not Clifford.
std::string expected_mirror_bitstring(const MirrorCircuitSpec& spec);

}  // namespace qbench
