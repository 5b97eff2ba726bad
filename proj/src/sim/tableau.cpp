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
#include "qbench/sim/tableau.hpp"

#include <stdexcept>
#include <utility>

namespace qbench {

StabilizerTableau::StabilizerTableau(int num_qubits)
    : n_(num_qubits), words_((num_qubits + 63) / 64) {
  const int rows = 2 * n_ + 1;  // last row is scratch space
  xs_.assign(static_cast<std::size_t>(rows) * words_, 0);
  zs_.assign(static_cast<std::size_t>(rows) * words_, 0);
  r_.assign(rows, 0);
  for (int q = 0; q < n_; ++q) {
    flip_x(q, q);
    flip_z(n_ + q, q);
  }
}

void StabilizerTableau::apply(const GateOp& op) {
  const int rows = 2 * n_;
  const int a = op.qubits.empty() ? 0 : op.qubits[0];
  switch (op.kind) {
    case GateKind::H:
      for (int i = 0; i < rows; ++i) {
        bool xa = x(i, a), za = z(i, a);
        r_[i] ^= xa & za;
        if (xa != za) {
          flip_x(i, a);
          flip_z(i, a);
        }
      }
      break;
    case GateKind::S:
      for (int i = 0; i < rows; ++i) {
        r_[i] ^= x(i, a) & z(i, a);
        if (x(i, a)) flip_z(i, a);
      }
      break;
    case GateKind::Sdg:
      for (int i = 0; i < rows; ++i) {
        r_[i] ^= x(i, a) & !z(i, a);
        if (x(i, a)) flip_z(i, a);
      }
      break;
    case GateKind::X:
      for (int i = 0; i < rows; ++i) r_[i] ^= z(i, a);
      break;
    case GateKind::Y:
      for (int i = 0; i < rows; ++i) r_[i] ^= x(i, a) ^ z(i, a);
      break;
    case GateKind::Z:
      for (int i = 0; i < rows; ++i) r_[i] ^= x(i, a);
      break;
    case GateKind::CX: {
      const int t = op.qubits[1];
      for (int i = 0; i < rows; ++i) {
        bool xc = x(i, a), zt = z(i, t);
        r_[i] ^= xc & zt & (x(i, t) ^ z(i, a) ^ 1);
        if (xc) flip_x(i, t);
        if (zt) flip_z(i, a);
      }
      break;
    }
    case GateKind::CZ: {
      const int b = op.qubits[1];
      for (int i = 0; i < rows; ++i) {
        bool xa = x(i, a), xb = x(i, b);
        r_[i] ^= xa & xb & (z(i, a) ^ z(i, b));
        if (xb) flip_z(i, a);
        if (xa) flip_z(i, b);
      }
      break;
    }
    case GateKind::Swap: {
      const int b = op.qubits[1];
      for (int i = 0; i < rows; ++i) {
        if (x(i, a) != x(i, b)) {
          flip_x(i, a);
          flip_x(i, b);
        }
        if (z(i, a) != z(i, b)) {
          flip_z(i, a);
          flip_z(i, b);
        }
      }
      break;
    }
    case GateKind::Barrier:
      break;
    default:
      throw std::invalid_argument("tableau: unsupported op " + std::string(op.name()));
  }
}

void StabilizerTableau::rowsum(int h, int i) {
  // exponent of i picked up by multiplying row i into row h
  int e = 2 * r_[h] + 2 * r_[i];
  for (int q = 0; q < n_; ++q) {
    int x1 = x(i, q), z1 = z(i, q), x2 = x(h, q), z2 = z(h, q);
    if (x1 && z1) {
      e += z2 - x2;
    } else if (x1) {
      e += z2 * (2 * x2 - 1);
    } else if (z1) {
      e += x2 * (1 - 2 * z2);
    }
  }
  r_[h] = static_cast<std::uint8_t>((((e % 4) + 4) % 4) == 2);
  for (int w = 0; w < words_; ++w) {
    xs_[h * words_ + w] ^= xs_[i * words_ + w];
    zs_[h * words_ + w] ^= zs_[i * words_ + w];
  }
}

void StabilizerTableau::copy_row(int dst, int src) {
  for (int w = 0; w < words_; ++w) {
    xs_[dst * words_ + w] = xs_[src * words_ + w];
    zs_[dst * words_ + w] = zs_[src * words_ + w];
  }
  r_[dst] = r_[src];
}

void StabilizerTableau::clear_row(int row) {
  for (int w = 0; w < words_; ++w) {
    xs_[row * words_ + w] = 0;
    zs_[row * words_ + w] = 0;
  }
  r_[row] = 0;
}

StabilizerTableau::Outcome StabilizerTableau::measure(int a, Rng& rng) {
  int p = -1;
  for (int i = n_; i < 2 * n_; ++i) {
    if (x(i, a)) {
      p = i;
      break;
    }
  }
  if (p >= 0) {
    for (int i = 0; i < 2 * n_; ++i) {
      if (i != p && x(i, a)) rowsum(i, p);
    }
    copy_row(p - n_, p);
    clear_row(p);
    flip_z(p, a);
    int bit = static_cast<int>(rng() & 1);
    r_[p] = static_cast<std::uint8_t>(bit);
    return {bit, false};
  }
  const int scratch = 2 * n_;
  clear_row(scratch);
  for (int i = 0; i < n_; ++i) {
    if (x(i, a)) rowsum(scratch, i + n_);
  }
  return {r_[scratch], true};
}

void StabilizerTableau::reset(int q, Rng& rng) {
  if (measure(q, rng).bit) apply(GateOp{GateKind::X, {q}, {}});
}

PauliString StabilizerTableau::row_pauli(int row) const {
  PauliString p(n_);
  for (int q = 0; q < n_; ++q) {
    p.x[q] = x(row, q);
    p.z[q] = z(row, q);
  }
  p.phase = r_[row] ? 2 : 0;
  return p;
}

PauliString StabilizerTableau::stabilizer(int i) const { return row_pauli(n_ + i); }

bool StabilizerTableau::is_consistent() const {
  for (int i = 0; i < 2 * n_; ++i) {
    PauliString pi = row_pauli(i);
    for (int j = i + 1; j < 2 * n_; ++j) {
      bool should_anticommute = (j == i + n_);
      if (pi.commutes_with(row_pauli(j)) == should_anticommute) return false;
    }
  }
  return true;
}

}  // namespace qbench
