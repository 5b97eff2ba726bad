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

#include <set>
#include <string>

#include "qbench/circuit/circuit.hpp"

namespace qbench {

/// Rewrites \p c so every unitary op is in \p basis_gates. Barriers, measurements
/// and resets pass through. The result equals the input up to global phase.
///
/// Single-qubit gates are re-synthesized from their ZYZ angles into {rz, ry},
/// {rz, rx} or {r} (with rz when available). Two-qubit gates are rewritten onto
/// whichever of cz, cx, rzz the basis offers. Gates already in the basis are kept.
/// Throws Validation when a gate cannot be expressed in the basis.
Circuit lower_to_basis(const Circuit& c, const std::set<std::string>& basis_gates);

/// Peephole pass: removes adjacent inverse pairs (h h, s sdg, cx cx, ...) and
/// merges consecutive rotations about the same axis, cascading through the
/// gates it exposes. Barriers, measurements and resets block cancellation.
Circuit cancel_adjacent_inverses(const Circuit& c);

}  // namespace qbench
