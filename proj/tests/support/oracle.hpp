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
// Dense-matrix reference model used to cross-check the simulators. Gate
// matrices are written out here independently of the library definitions.
#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "qbench/circuit/circuit.hpp"

namespace qbench::oracle {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat local_matrix(const GateOp& op) {
  const std::complex<double> i(0, 1);
  const double r = 1 / std::sqrt(2.0);
  auto rot = [&](const Mat& p, double t) {
    return Mat(std::cos(t / 2) * Mat::Identity(2, 2) - i * std::sin(t / 2) * p);
  };
  Mat X(2, 2), Y(2, 2), Z(2, 2);
  X << 0, 1, 1, 0;
  Y << 0, -i, i, 0;
  Z << 1, 0, 0, -1;
  Mat m;
  switch (op.kind) {
    case GateKind::H: m = Mat(2, 2); m << r, r, r, -r; return m;
    case GateKind::X: return X;
    case GateKind::Y: return Y;
    case GateKind::Z: return Z;
    case GateKind::S: m = Mat(2, 2); m << 1, 0, 0, i; return m;
    case GateKind::Sdg: m = Mat(2, 2); m << 1, 0, 0, -i; return m;
    case GateKind::RX: return rot(X, op.params[0]);
    case GateKind::RY: return rot(Y, op.params[0]);
    case GateKind::RZ: return rot(Z, op.params[0]);
    case GateKind::R:
      return rot(std::cos(op.params[1]) * X + std::sin(op.params[1]) * Y, op.params[0]);
    default: break;
  }
  // two-qubit: local index = bit(first qubit) + 2 * bit(second qubit)
  m = Mat::Zero(4, 4);
  switch (op.kind) {
    case GateKind::CX:
      m(0, 0) = 1; m(2, 2) = 1; m(3, 1) = 1; m(1, 3) = 1; return m;
    case GateKind::CZ:
      m(0, 0) = 1; m(1, 1) = 1; m(2, 2) = 1; m(3, 3) = -1; return m;
    case GateKind::Swap:
      m(0, 0) = 1; m(2, 1) = 1; m(1, 2) = 1; m(3, 3) = 1; return m;
    case GateKind::ISwap:
      m(0, 0) = 1; m(2, 1) = i; m(1, 2) = i; m(3, 3) = 1; return m;
    case GateKind::RZZ: {
      const double t = op.params[0];
      for (int k = 0; k < 4; ++k) {
        int parity = (k & 1) ^ (k >> 1);
        m(k, k) = std::exp(-i * (parity ? -t / 2 : t / 2));
      }
      return m;
    }
    default: throw std::invalid_argument("oracle: not a unitary gate");
  }
}

/// Full 2^n matrix of \p op: entry (a, b) is the local entry when all
/// untouched bits of a and b agree.
inline Mat full_matrix(const GateOp& op, int n) {
  const Mat loc = local_matrix(op);
  const std::size_t dim = std::size_t{1} << n;
  std::size_t mask = 0;
  for (int q : op.qubits) mask |= std::size_t{1} << q;
  auto local_index = [&](std::size_t v) {
    std::size_t li = 0;
    for (std::size_t j = 0; j < op.qubits.size(); ++j) li |= ((v >> op.qubits[j]) & 1) << j;
    return li;
  };
  Mat full = Mat::Zero(dim, dim);
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = 0; b < dim; ++b) {
      if ((a & ~mask) == (b & ~mask)) full(a, b) = loc(local_index(a), local_index(b));
    }
  }
  return full;
}

inline Mat circuit_unitary(const Circuit& c) {
  const std::size_t dim = std::size_t{1} << c.num_qubits();
  Mat u = Mat::Identity(dim, dim);
  for (const auto& op : c.ops()) {
    if (op.is_unitary()) u = full_matrix(op, c.num_qubits()) * u;
  }
  return u;
}

inline Vec circuit_state(const Circuit& c) {
  Vec psi = Vec::Zero(std::size_t{1} << c.num_qubits());
  psi(0) = 1.0;
  for (const auto& op : c.ops()) {
    if (op.is_unitary()) psi = full_matrix(op, c.num_qubits()) * psi;
  }
  return psi;
}

/// |<a|b>|^2 for unit vectors.
inline double overlap(const Vec& a, const Vec& b) { return std::norm(a.dot(b)); }

/// Random circuit over the whole gate vocabulary (unitary part only).
inline Circuit random_circuit(int n, int depth, std::mt19937_64& rng, bool clifford_only = false) {
  Circuit c(n);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::uniform_int_distribution<int> pick_q(0, n - 1);
  const std::vector<GateKind> cliff = {GateKind::H, GateKind::X, GateKind::Y, GateKind::Z,
                                       GateKind::S, GateKind::Sdg, GateKind::CX, GateKind::CZ,
                                       GateKind::Swap};
  const std::vector<GateKind> all = {GateKind::H, GateKind::X, GateKind::Y, GateKind::Z,
                                     GateKind::S, GateKind::Sdg, GateKind::CX, GateKind::CZ,
                                     GateKind::Swap, GateKind::RX, GateKind::RY, GateKind::RZ,
                                     GateKind::RZZ, GateKind::R, GateKind::ISwap};
  const auto& kinds = clifford_only ? cliff : all;
  std::uniform_int_distribution<std::size_t> pick_k(0, kinds.size() - 1);
  for (int d = 0; d < depth; ++d) {
    GateKind k = kinds[pick_k(rng)];
    const GateInfo& info = gate_info(k);
    if (info.arity == 2 && n < 2) continue;
    int a = pick_q(rng), b = pick_q(rng);
    while (info.arity == 2 && b == a) b = pick_q(rng);
    std::vector<double> params;
    for (int p = 0; p < info.num_params; ++p) params.push_back(angle(rng));
    c.append(GateOp{k, info.arity == 2 ? std::vector<int>{a, b} : std::vector<int>{a}, params});
  }
  return c;
}

}  // namespace qbench::oracle
