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
#include "qbench/sim/mirror.hpp"

#include <stdexcept>

#include "qbench/sim/clifford_group.hpp"

namespace qbench {

std::vector<GateOp> MirrorCircuitSpec::forward_ops() const {
  std::vector<GateOp> ops = prep;
  for (const auto& layer : layers) ops.insert(ops.end(), layer.begin(), layer.end());
  return ops;
}

std::vector<GateOp> MirrorCircuitSpec::mirror_ops() const {
  std::vector<GateOp> fwd = forward_ops(), out;
  for (auto it = fwd.rbegin(); it != fwd.rend(); ++it) {
    for (auto& op : inverse_ops(*it)) out.push_back(std::move(op));
  }
  return out;
}

Circuit MirrorCircuitSpec::to_circuit(int device_qubits) const {
  Circuit c(device_qubits);
  auto put = [&](const std::vector<GateOp>& ops) {
    for (auto& op : remap_ops(ops, qubits)) c.append(std::move(op));
  };
  put(prep);
  c.barrier(qubits);
  for (const auto& layer : layers) {
    put(layer);
    c.barrier(qubits);
  }
  for (int q = 0; q < central.size(); ++q) {
    switch (central.letter(q)) {
      case 'X': c.x(qubits[q]); break;
      case 'Y': c.y(qubits[q]); break;
      case 'Z': c.z(qubits[q]); break;
      default: break;
    }
  }
  c.barrier(qubits);
  put(mirror_ops());
  for (int i = 0; i < width; ++i) c.measure(qubits[i], i);
  c.metadata()["mirror_width"] = width;
  return c;
}

std::string expected_mirror_bitstring(const MirrorCircuitSpec& spec) {
  for (const auto& op : spec.forward_ops()) {
    if (!is_clifford_gate(op.kind) && op.kind != GateKind::Barrier) {
      throw std::invalid_argument("mirror layer contains non-Clifford op " + std::string(op.name()));
    }
  }
  // F^dagger Q F is a Pauli; its X part flips the corresponding output bits
  PauliString p = clifford_conjugate_pauli(spec.mirror_ops(), spec.central);
  std::string bits(spec.width, '0');
  for (int q = 0; q < spec.width; ++q) bits[q] = p.x[q] ? '1' : '0';
  return bits;
}

}  // namespace qbench
