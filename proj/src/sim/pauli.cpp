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
#include "qbench/sim/pauli.hpp"

#include <stdexcept>
#include <utility>

namespace qbench {

bool is_clifford_gate(GateKind k) {
  switch (k) {
    case GateKind::H: case GateKind::X: case GateKind::Y: case GateKind::Z:
    case GateKind::S: case GateKind::Sdg: case GateKind::CX: case GateKind::CZ:
    case GateKind::Swap:
      return true;
    default:
      return false;
  }
}

char PauliString::letter(int q) const {
  static constexpr char kLetters[4] = {'I', 'X', 'Z', 'Y'};
  return kLetters[x[q] | (z[q] << 1)];
}

void PauliString::set(int q, char letter) {
  switch (letter) {
    case 'I': x[q] = 0; z[q] = 0; break;
    case 'X': x[q] = 1; z[q] = 0; break;
    case 'Y': x[q] = 1; z[q] = 1; break;
    case 'Z': x[q] = 0; z[q] = 1; break;
    default: throw std::invalid_argument(std::string("bad Pauli letter ") + letter);
  }
}

bool PauliString::is_identity() const {
  for (int q = 0; q < size(); ++q) {
    if (x[q] || z[q]) return false;
  }
  return true;
}

PauliString PauliString::parse(const std::string& s) {
  std::size_t pos = 0;
  int phase = 0;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
    if (s[pos] == '-') phase = 2;
    ++pos;
  }
  if (pos < s.size() && s[pos] == 'i') {
    phase += 1;
    ++pos;
  }
  PauliString p(static_cast<int>(s.size() - pos));
  p.phase = phase % 4;
  for (int q = 0; pos < s.size(); ++pos, ++q) p.set(q, s[pos]);
  return p;
}

std::string PauliString::str() const {
  static constexpr const char* kPhase[4] = {"+", "+i", "-", "-i"};
  std::string out = kPhase[phase & 3];
  for (int q = 0; q < size(); ++q) out += letter(q);
  return out;
}

PauliString PauliString::operator*(const PauliString& o) const {
  if (o.size() != size()) throw std::invalid_argument("Pauli width mismatch");
  PauliString r(size());
  int ph = phase + o.phase;
  for (int q = 0; q < size(); ++q) {
    // single-letter product phase: XY = iZ, YZ = iX, ZX = iY and reverses give -i
    int a = letter(q), b = o.letter(q);
    if (a != 'I' && b != 'I' && a != b) {
      bool cyclic = (a == 'X' && b == 'Y') || (a == 'Y' && b == 'Z') || (a == 'Z' && b == 'X');
      ph += cyclic ? 1 : 3;
    }
    r.x[q] = x[q] ^ o.x[q];
    r.z[q] = z[q] ^ o.z[q];
  }
  r.phase = ph & 3;
  return r;
}

bool PauliString::commutes_with(const PauliString& o) const {
  int anti = 0;
  for (int q = 0; q < size(); ++q) anti ^= (x[q] & o.z[q]) ^ (z[q] & o.x[q]);
  return anti == 0;
}

void PauliString::conjugate_by(const GateOp& op) {
  auto flip = [this](int bit) { phase = (phase + 2 * bit) & 3; };
  const int a = op.qubits.empty() ? 0 : op.qubits[0];
  switch (op.kind) {
    case GateKind::H:
      flip(x[a] & z[a]);
      std::swap(x[a], z[a]);
      break;
    case GateKind::S:
      flip(x[a] & z[a]);
      z[a] ^= x[a];
      break;
    case GateKind::Sdg:
      flip(x[a] & (z[a] ^ 1));
      z[a] ^= x[a];
      break;
    case GateKind::X: flip(z[a]); break;
    case GateKind::Y: flip(x[a] ^ z[a]); break;
    case GateKind::Z: flip(x[a]); break;
    case GateKind::CX: {
      const int t = op.qubits[1];
      flip(x[a] & z[t] & (x[t] ^ z[a] ^ 1));
      x[t] ^= x[a];
      z[a] ^= z[t];
      break;
    }
    case GateKind::CZ: {
      const int b = op.qubits[1];
      flip(x[a] & x[b] & (z[a] ^ z[b]));
      z[a] ^= x[b];
      z[b] ^= x[a];
      break;
    }
    case GateKind::Swap: {
      const int b = op.qubits[1];
      std::swap(x[a], x[b]);
      std::swap(z[a], z[b]);
      break;
    }
    case GateKind::Barrier:
      break;
    default:
      throw std::invalid_argument("non-Clifford op in conjugation: " + std::string(op.name()));
  }
}

PauliString clifford_conjugate_pauli(const std::vector<GateOp>& ops, PauliString p) {
  for (const auto& op : ops) p.conjugate_by(op);
  return p;
}

}  // namespace qbench
