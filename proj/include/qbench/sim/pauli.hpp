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

namespace qbench {

/// i^phase * P_0 (x) P_1 (x) ... with letter q encoded as (x[q], z[q]):
/// I = (0,0), X = (1,0), Z = (0,1), Y = (1,1).
struct PauliString {
  int phase = 0;  // power of i, 0..3
  std::vector<std::uint8_t> x, z;

  PauliString() = default;
  explicit PauliString(int n) : x(n, 0), z(n, 0) {}

  int size() const { return static_cast<int>(x.size()); }
  char letter(int q) const;
  void set(int q, char letter);
  bool is_identity() const;

  /// Parses "+XIZ", "-iY", "XX" (sign optional).
  static PauliString parse(const std::string& s);
  std::string str() const;

  /// Returns this * other (this applied after other).
  PauliString operator*(const PauliString& other) const;
  bool commutes_with(const PauliString& other) const;
  bool operator==(const PauliString& other) const = default;

  /// Replaces P by G P G^dagger for a Clifford op G.
  void conjugate_by(const GateOp& op);
};

/// C P C^dagger where C applies \p ops in order. Throws on non-Clifford ops.
PauliString clifford_conjugate_pauli(const std::vector<GateOp>& ops, PauliString p);

/// True for the gate kinds the stabilizer backends accept.
bool is_clifford_gate(GateKind k);

}  // namespace qbench
