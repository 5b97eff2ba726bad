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

#include <array>
#include <complex>

#include "qbench/circuit/circuit.hpp"

namespace qbench {

using cplx = std::complex<double>;
/// Row-major 2x2 matrix.
using Mat2 = std::array<cplx, 4>;
/// Row-major 4x4 matrix; basis index = bit(qubits[0]) + 2 * bit(qubits[1]).
using Mat4 = std::array<cplx, 16>;

Mat2 single_qubit_matrix(const GateOp& op);
Mat4 two_qubit_matrix(const GateOp& op);

Mat2 matmul(const Mat2& a, const Mat2& b);

/// U = e^{i alpha} Rz(phi) Ry(theta) Rz(lambda).
struct ZyzAngles {
  double theta = 0, phi = 0, lambda = 0;
};
ZyzAngles zyz_decompose(const Mat2& u);

}  // namespace qbench
