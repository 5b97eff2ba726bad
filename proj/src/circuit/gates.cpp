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
#include "qbench/circuit/gates.hpp"

#include <cmath>
#include <stdexcept>

namespace qbench {
namespace {

constexpr double kRsqrt2 = 0.70710678118654752440;
const cplx kI{0.0, 1.0};

Mat2 rotation(double theta, double nx, double ny, double nz) {
  double c = std::cos(theta / 2), s = std::sin(theta / 2);
  return {cplx(c, -s * nz), cplx(-s * ny, -s * nx),
          cplx(s * ny, -s * nx), cplx(c, s * nz)};
}

}  // namespace

Mat2 single_qubit_matrix(const GateOp& op) {
  switch (op.kind) {
    case GateKind::H: return {kRsqrt2, kRsqrt2, kRsqrt2, -kRsqrt2};
    case GateKind::X: return {0.0, 1.0, 1.0, 0.0};
    case GateKind::Y: return {0.0, -kI, kI, 0.0};
    case GateKind::Z: return {1.0, 0.0, 0.0, -1.0};
    case GateKind::S: return {1.0, 0.0, 0.0, kI};
    case GateKind::Sdg: return {1.0, 0.0, 0.0, -kI};
    case GateKind::RX: return rotation(op.params[0], 1, 0, 0);
    case GateKind::RY: return rotation(op.params[0], 0, 1, 0);
    case GateKind::RZ: return rotation(op.params[0], 0, 0, 1);
    case GateKind::R:
      return rotation(op.params[0], std::cos(op.params[1]), std::sin(op.params[1]), 0);
    default: throw std::invalid_argument("not a one-qubit unitary: " + std::string(op.name()));
  }
}

Mat4 two_qubit_matrix(const GateOp& op) {
  Mat4 m{};
  auto set = [&m](int row, int col, cplx v) { m[row * 4 + col] = v; };
  switch (op.kind) {
    case GateKind::CX:  // control = qubits[0] (bit 0), target = qubits[1] (bit 1)
      set(0, 0, 1); set(2, 2, 1); set(1, 3, 1); set(3, 1, 1);
      break;
    case GateKind::CZ:
      set(0, 0, 1); set(1, 1, 1); set(2, 2, 1); set(3, 3, -1);
      break;
    case GateKind::Swap:
      set(0, 0, 1); set(1, 2, 1); set(2, 1, 1); set(3, 3, 1);
      break;
    case GateKind::ISwap:
      set(0, 0, 1); set(1, 2, kI); set(2, 1, kI); set(3, 3, 1);
      break;
    case GateKind::RZZ: {
      cplx e = std::exp(-kI * (op.params[0] / 2));
      set(0, 0, e); set(1, 1, std::conj(e)); set(2, 2, std::conj(e)); set(3, 3, e);
      break;
    }
    default: throw std::invalid_argument("not a two-qubit unitary: " + std::string(op.name()));
  }
  return m;
}

Mat2 matmul(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

ZyzAngles zyz_decompose(const Mat2& u) {
  cplx g = std::sqrt(u[0] * u[3] - u[1] * u[2]);
  Mat2 v{u[0] / g, u[1] / g, u[2] / g, u[3] / g};
  // v = [[e^{-i s} cos, -e^{-i d} sin], [e^{i d} sin, e^{i s} cos]], s = (phi+lambda)/2, d = (phi-lambda)/2
  ZyzAngles a;
  a.theta = 2 * std::atan2(std::abs(v[2]), std::abs(v[3]));
  double s = std::abs(v[3]) > 1e-12 ? std::arg(v[3]) : 0.0;
  double d = std::abs(v[2]) > 1e-12 ? std::arg(v[2]) : 0.0;
  a.phi = s + d;
  a.lambda = s - d;
  return a;
}

}  // namespace qbench
