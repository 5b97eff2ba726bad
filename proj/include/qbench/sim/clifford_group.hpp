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

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "qbench/circuit/circuit.hpp"
#include "qbench/common/rng.hpp"
#include "qbench/sim/pauli.hpp"

namespace qbench {

/// A Clifford on m qubits, stored as the images of X_q and Z_q (with signs).
class CliffordImage {
 public:
  explicit CliffordImage(int num_qubits);

  int num_qubits() const { return static_cast<int>(x_.size()); }
  /// Composes \p op after the current Clifford.
  void apply(const GateOp& op);
  void apply(const std::vector<GateOp>& ops);
  std::string key() const;

 private:
  std::vector<PauliString> x_, z_;
};

/// The full 1- or 2-qubit Clifford group (modulo global phase), enumerated
/// breadth-first over {h, s} (and cx for two qubits). Each element keeps a
/// shortest generating word on local qubits 0..m-1.
class CliffordGroup {
 public:
  static const CliffordGroup& one_qubit();
  static const CliffordGroup& two_qubit();

  int num_qubits() const { return m_; }
  std::size_t size() const { return words_.size(); }
  const std::vector<GateOp>& word(std::size_t i) const { return words_[i]; }
  std::size_t inverse(std::size_t i) const { return inverse_[i]; }
  /// Element index of \p c; throws if not a member.
  std::size_t index_of(const CliffordImage& c) const;
  std::size_t sample(Rng& rng) const { return uniform_below(rng, size()); }

 private:
  explicit CliffordGroup(int m);

  int m_;
  std::vector<std::vector<GateOp>> words_;
  std::vector<std::size_t> inverse_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Copies \p word with local qubit j mapped to \p qubits[j].
std::vector<GateOp> remap_ops(const std::vector<GateOp>& word, const std::vector<int>& qubits);

}  // namespace qbench
