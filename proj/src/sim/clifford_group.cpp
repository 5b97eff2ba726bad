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
#include "qbench/sim/clifford_group.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace qbench {

CliffordImage::CliffordImage(int num_qubits) {
  for (int q = 0; q < num_qubits; ++q) {
    PauliString px(num_qubits), pz(num_qubits);
    px.x[q] = 1;
    pz.z[q] = 1;
    x_.push_back(std::move(px));
    z_.push_back(std::move(pz));
  }
}

void CliffordImage::apply(const GateOp& op) {
  for (auto& p : x_) p.conjugate_by(op);
  for (auto& p : z_) p.conjugate_by(op);
}

void CliffordImage::apply(const std::vector<GateOp>& ops) {
  for (const auto& op : ops) apply(op);
}

std::string CliffordImage::key() const {
  std::string k;
  for (std::size_t q = 0; q < x_.size(); ++q) {
    k += x_[q].str();
    k += z_[q].str();
  }
  return k;
}

CliffordGroup::CliffordGroup(int m) : m_(m) {
  std::vector<GateOp> gens;
  for (int q = 0; q < m; ++q) {
    gens.push_back(GateOp{GateKind::H, {q}, {}});
    gens.push_back(GateOp{GateKind::S, {q}, {}});
  }
  if (m == 2) gens.push_back(GateOp{GateKind::CX, {0, 1}, {}});

  std::deque<std::size_t> frontier;
  CliffordImage id(m);
  index_.emplace(id.key(), 0);
  words_.emplace_back();
  frontier.push_back(0);
  while (!frontier.empty()) {
    std::size_t cur = frontier.front();
    frontier.pop_front();
    for (const auto& g : gens) {
      std::vector<GateOp> w = words_[cur];
      w.push_back(g);
      CliffordImage img(m);
      img.apply(w);
      if (index_.emplace(img.key(), words_.size()).second) {
        words_.push_back(std::move(w));
        frontier.push_back(words_.size() - 1);
      }
    }
  }

  inverse_.resize(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    CliffordImage img(m);
    for (auto it = words_[i].rbegin(); it != words_[i].rend(); ++it) img.apply(inverse_ops(*it));
    inverse_[i] = index_of(img);
  }
}

const CliffordGroup& CliffordGroup::one_qubit() {
  static const CliffordGroup g(1);
  return g;
}

const CliffordGroup& CliffordGroup::two_qubit() {
  static const CliffordGroup g(2);
  return g;
}

std::size_t CliffordGroup::index_of(const CliffordImage& c) const {
  auto it = index_.find(c.key());
  if (it == index_.end()) throw std::invalid_argument("not an element of the Clifford group");
  return it->second;
}

std::vector<GateOp> remap_ops(const std::vector<GateOp>& word, const std::vector<int>& qubits) {
  std::vector<GateOp> out = word;
  for (auto& op : out) {
    for (int& q : op.qubits) q = qubits.at(q);
  }
  return out;
}

}  // namespace qbench
