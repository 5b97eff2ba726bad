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
#include "qbench/sim/statevector.hpp"

#include <cmath>

#include "qbench/common/error.hpp"

namespace qbench {

StateVector::StateVector(int num_qubits) : n_(num_qubits) {
  if (num_qubits < 0 || num_qubits > kStatevectorMaxQubits) {
    throw execution_error("statevector width " + std::to_string(num_qubits) +
                          " exceeds the cap of " + std::to_string(kStatevectorMaxQubits) + " qubits");
  }
  amp_.assign(std::size_t{1} << n_, cplx(0.0, 0.0));
  amp_[0] = 1.0;
}

void StateVector::apply_matrix(int q, const Mat2& m) {
  const std::size_t bit = std::size_t{1} << q;
  const std::size_t dim = amp_.size();
  for (std::size_t hi = 0; hi < dim; hi += 2 * bit) {
    for (std::size_t i = hi; i < hi + bit; ++i) {
      cplx a0 = amp_[i], a1 = amp_[i | bit];
      amp_[i] = m[0] * a0 + m[1] * a1;
      amp_[i | bit] = m[2] * a0 + m[3] * a1;
    }
  }
}

void StateVector::apply_matrix(int q0, int q1, const Mat4& m) {
  const std::size_t b0 = std::size_t{1} << q0, b1 = std::size_t{1} << q1;
  const std::size_t dim = amp_.size();
  for (std::size_t i = 0; i < dim; ++i) {
    if (i & (b0 | b1)) continue;
    const std::size_t idx[4] = {i, i | b0, i | b1, i | b0 | b1};
    cplx v[4] = {amp_[idx[0]], amp_[idx[1]], amp_[idx[2]], amp_[idx[3]]};
    for (int r = 0; r < 4; ++r) {
      amp_[idx[r]] = m[r * 4] * v[0] + m[r * 4 + 1] * v[1] + m[r * 4 + 2] * v[2] + m[r * 4 + 3] * v[3];
    }
  }
}

void StateVector::apply_pauli(int q, char letter) {
  const std::size_t bit = std::size_t{1} << q;
  const cplx i1(0.0, 1.0);
  switch (letter) {
    case 'I': return;
    case 'X':
      for (std::size_t i = 0; i < amp_.size(); ++i) {
        if (!(i & bit)) std::swap(amp_[i], amp_[i | bit]);
      }
      return;
    case 'Z':
      for (std::size_t i = 0; i < amp_.size(); ++i) {
        if (i & bit) amp_[i] = -amp_[i];
      }
      return;
    case 'Y':
      for (std::size_t i = 0; i < amp_.size(); ++i) {
        if (!(i & bit)) {
          cplx a0 = amp_[i], a1 = amp_[i | bit];
          amp_[i] = -i1 * a1;
          amp_[i | bit] = i1 * a0;
        }
      }
      return;
    default: throw std::invalid_argument("bad Pauli letter");
  }
}

void StateVector::apply(const GateOp& op) {
  switch (op.kind) {
    case GateKind::Barrier:
    case GateKind::Measure:
      return;
    case GateKind::X: apply_pauli(op.qubits[0], 'X'); return;
    case GateKind::Y: apply_pauli(op.qubits[0], 'Y'); return;
    case GateKind::Z: apply_pauli(op.qubits[0], 'Z'); return;
    case GateKind::CX: {
      const std::size_t c = std::size_t{1} << op.qubits[0], t = std::size_t{1} << op.qubits[1];
      for (std::size_t i = 0; i < amp_.size(); ++i) {
        if ((i & c) && !(i & t)) std::swap(amp_[i], amp_[i | t]);
      }
      return;
    }
    case GateKind::CZ: {
      const std::size_t m = (std::size_t{1} << op.qubits[0]) | (std::size_t{1} << op.qubits[1]);
      for (std::size_t i = 0; i < amp_.size(); ++i) {
        if ((i & m) == m) amp_[i] = -amp_[i];
      }
      return;
    }
    case GateKind::RZZ: {
      const std::size_t a = std::size_t{1} << op.qubits[0], b = std::size_t{1} << op.qubits[1];
      const cplx even = std::polar(1.0, -op.params[0] / 2), odd = std::conj(even);
      for (std::size_t i = 0; i < amp_.size(); ++i) {
        amp_[i] *= (((i & a) != 0) == ((i & b) != 0)) ? even : odd;
      }
      return;
    }
    case GateKind::Reset:
      throw std::invalid_argument("reset needs an rng");
    default:
      if (op.is_two_qubit()) {
        apply_matrix(op.qubits[0], op.qubits[1], two_qubit_matrix(op));
      } else {
        apply_matrix(op.qubits[0], single_qubit_matrix(op));
      }
  }
}

double StateVector::probability_one(int q) const {
  const std::size_t bit = std::size_t{1} << q;
  double p = 0.0;
  for (std::size_t i = 0; i < amp_.size(); ++i) {
    if (i & bit) p += std::norm(amp_[i]);
  }
  return p;
}

int StateVector::measure(int q, Rng& rng) {
  const double p1 = probability_one(q);
  const int bit = uniform01(rng) < p1 ? 1 : 0;
  const double keep = bit ? p1 : 1.0 - p1;
  const double scale = keep > 0 ? 1.0 / std::sqrt(keep) : 0.0;
  const std::size_t mask = std::size_t{1} << q;
  for (std::size_t i = 0; i < amp_.size(); ++i) {
    amp_[i] = (((i & mask) != 0) == (bit == 1)) ? amp_[i] * scale : cplx(0.0, 0.0);
  }
  return bit;
}

void StateVector::reset(int q, Rng& rng) {
  if (measure(q, rng)) apply_pauli(q, 'X');
}

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& a : amp_) s += std::norm(a);
  return std::sqrt(s);
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> p(amp_.size());
  for (std::size_t i = 0; i < amp_.size(); ++i) p[i] = std::norm(amp_[i]);
  return p;
}

StateVector simulate_statevector(const Circuit& c, Rng& rng) {
  StateVector sv(c.num_qubits());
  for (const auto& op : c.ops()) {
    if (op.kind == GateKind::Reset) {
      sv.reset(op.qubits[0], rng);
    } else {
      sv.apply(op);
    }
  }
  return sv;
}

StateVector simulate_statevector(const Circuit& c) {
  Rng rng(0);
  return simulate_statevector(c, rng);
}

}  // namespace qbench
