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
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace qbench {

using json = nlohmann::json;

/// Measured bitstrings and their shot counts. Character i of a key is
/// classical bit i, so qubit 0 measured into bit 0 is the leftmost character.
struct CountsMap {
  std::map<std::string, std::int64_t> counts;
  std::int64_t shots = 0;

  void add(const std::string& bits, std::int64_t n = 1);
  std::int64_t get(const std::string& bits) const;
  double probability(const std::string& bits) const;
  /// Bitstring length, or 0 when empty.
  int width() const;

  json to_json() const;
  static CountsMap from_json(const json& j);
};

/// (N0 - N1) / shots for classical bit \p bit.
double expectation_z(const CountsMap& counts, int bit);

/// Parity expectation <Z_a Z_b ...> over the listed classical bits.
double expectation_parity(const CountsMap& counts, const std::vector<int>& bits);

/// Counts restricted to \p bits, in the given order.
CountsMap marginal(const CountsMap& counts, const std::vector<int>& bits);

}  // namespace qbench
