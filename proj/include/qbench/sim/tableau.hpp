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
#include <vector>

#include "qbench/circuit/circuit.hpp"
#include "qbench/common/rng.hpp"
#include "qbench/sim/pauli.hpp"

namespace qbench {

/// Aaronson-Gottesman stabilizer tableau. Rows 0..n-1 are destabilizers,
/// rows n..2n-1 stabilizers; each row carries a sign bit.
class StabilizerTableau {
 public:
  explicit StabilizerTableau(int num_qubits);

  int num_qubits() const { return n_; }
  void apply(const GateOp& op);

  struct Outcome {
    int bit;
    bool deterministic;
  };
  Outcome measure(int q, Rng& rng);
  void reset(int q, Rng& rng);

  /// Stabilizer row \p i (0..n-1) as a signed Pauli string.
  PauliString stabilizer(int i) const;
  /// Checks the symplectic relations between all rows.
  bool is_consistent() const;

 private:
  bool x(int row, int q) const { return (xs_[row * words_ + (q >> 6)] >> (q & 63)) & 1; }
  bool z(int row, int q) const { return (zs_[row * words_ + (q >> 6)] >> (q & 63)) & 1; }
  void flip_x(int row, int q) { xs_[row * words_ + (q >> 6)] ^= std::uint64_t{1} << (q & 63); }
  void flip_z(int row, int q) { zs_[row * words_ + (q >> 6)] ^= std::uint64_t{1} << (q & 63); }
  void rowsum(int h, int i);
  void copy_row(int dst, int src);
  void clear_row(int row);
  PauliString row_pauli(int row) const;

  int n_;
  int words_;
  std::vector<std::uint64_t> xs_, zs_;
  std::vector<std::uint8_t> r_;
};

}  // namespace qbench
