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

#include <vector>

#include "qbench/circuit/circuit.hpp"
#include "qbench/circuit/gates.hpp"
#include "qbench/common/rng.hpp"

namespace qbench {

inline constexpr int kStatevectorMaxQubits = 20;

/// Dense state of n qubits; qubit q is bit q of the amplitude index.
class StateVector {
 public:
  explicit StateVector(int num_qubits);

  int num_qubits() const { return n_; }
  const std::vector<cplx>& amplitudes() const { return amp_; }
  std::vector<cplx>& amplitudes() { return amp_; }

  void apply(const GateOp& op);
  void apply_matrix(int q, const Mat2& m);
  void apply_matrix(int q0, int q1, const Mat4& m);
  /// Applies a Pauli letter ('I', 'X', 'Y', 'Z') on qubit q.
  void apply_pauli(int q, char letter);
  /// Projective Z measurement with collapse and renormalization.
  int measure(int q, Rng& rng);
  void reset(int q, Rng& rng);

  double probability_one(int q) const;
  double norm() const;
  std::vector<double> probabilities() const;

 private:
  int n_;
  std::vector<cplx> amp_;
};

/// Runs the circuit on |0...0>. Measurements are treated as terminal and
/// skipped; resets collapse the state using \p rng.
StateVector simulate_statevector(const Circuit& c, Rng& rng);
StateVector simulate_statevector(const Circuit& c);

}  // namespace qbench
