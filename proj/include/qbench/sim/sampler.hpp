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
#include <optional>

#include "qbench/circuit/circuit.hpp"
#include "qbench/circuit/device.hpp"
#include "qbench/sim/counts.hpp"

namespace qbench {

/// Monte-Carlo sampling of \p shots executions.
///
/// The circuit is split into independent blocks of qubits linked by two-qubit
/// gates. Blocks made only of stabilizer gates run on a Pauli-frame sampler at
/// any width; other blocks run on the statevector backend (at most 20 qubits).
/// With noise, each unitary gate is followed by a uniformly random
/// non-identity Pauli on its support with probability p1 or p2, and each
/// measured bit flips with probability readout_eps.
///
/// The result is a pure function of (circuit, shots, noise, seed).
CountsMap sample_counts(const Circuit& c, std::int64_t shots,
                        const std::optional<NoiseProfile>& noise, std::uint64_t seed);

}  // namespace qbench
