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
#include "qbench/sim/counts.hpp"

#include <stdexcept>

#include "qbench/common/error.hpp"

namespace qbench {

void CountsMap::add(const std::string& bits, std::int64_t n) {
  if (n < 0) throw std::invalid_argument("negative count");
  if (n == 0) return;
  if (!counts.empty() && counts.begin()->first.size() != bits.size()) {
    throw std::invalid_argument("bitstring width mismatch");
  }
  counts[bits] += n;
  shots += n;
}

std::int64_t CountsMap::get(const std::string& bits) const {
  auto it = counts.find(bits);
  return it == counts.end() ? 0 : it->second;
}

double CountsMap::probability(const std::string& bits) const {
  return shots > 0 ? static_cast<double>(get(bits)) / static_cast<double>(shots) : 0.0;
}

int CountsMap::width() const {
  return counts.empty() ? 0 : static_cast<int>(counts.begin()->first.size());
}

json CountsMap::to_json() const {
  json c = json::object();
  for (const auto& [k, v] : counts) c[k] = v;
  return {{"counts", c}, {"shots", shots}};
}

CountsMap CountsMap::from_json(const json& j) {
  CountsMap m;
  for (const auto& [k, v] : j.at("counts").items()) {
    for (char ch : k) {
      if (ch != '0' && ch != '1') throw Error(ErrorKind::Validation, "bad bitstring " + k);
    }
    m.add(k, v.get<std::int64_t>());
  }
  if (j.contains("shots") && j.at("shots").get<std::int64_t>() != m.shots) {
    throw Error(ErrorKind::Validation, "counts do not sum to shots");
  }
  return m;
}

double expectation_parity(const CountsMap& counts, const std::vector<int>& bits) {
  if (counts.shots == 0) throw Error(ErrorKind::Validation, "empty counts");
  for (int b : bits) {
    if (b < 0 || b >= counts.width()) {
      throw Error(ErrorKind::Validation, "bit " + std::to_string(b) + " not measured");
    }
  }
  std::int64_t signed_sum = 0;
  for (const auto& [k, v] : counts.counts) {
    int parity = 0;
    for (int b : bits) parity ^= k[b] == '1';
    signed_sum += parity ? -v : v;
  }
  return static_cast<double>(signed_sum) / static_cast<double>(counts.shots);
}

double expectation_z(const CountsMap& counts, int bit) { return expectation_parity(counts, {bit}); }

CountsMap marginal(const CountsMap& counts, const std::vector<int>& bits) {
  CountsMap out;
  for (const auto& [k, v] : counts.counts) {
    std::string s;
    s.reserve(bits.size());
    for (int b : bits) s += k.at(b);
    out.add(s, v);
  }
  return out;
}

}  // namespace qbench
