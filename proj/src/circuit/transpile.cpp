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
#include "qbench/circuit/transpile.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>

#include "qbench/circuit/gates.hpp"
#include "qbench/common/error.hpp"

namespace qbench {
namespace {

constexpr double kPi = std::numbers::pi;

class Lowering {
 public:
  Lowering(const std::set<std::string>& basis, Circuit& out) : basis_(basis), out_(out) {
    if (has("rz") && has("ry")) {
      family_ = Family::ZY;
    } else if (has("rz") && has("rx")) {
      family_ = Family::ZX;
    } else if (has("r")) {
      family_ = Family::R;
    }
  }

  void emit(const GateOp& op) {
    if (!op.is_unitary() || has(op.name())) {
      out_.append(op);
      return;
    }
    if (op.is_two_qubit()) {
      two_qubit(op);
    } else {
      one_qubit(op);
    }
  }

 private:
  enum class Family { None, ZY, ZX, R };

  bool has(std::string_view g) const { return basis_.count(std::string(g)) > 0; }

  void put(GateKind k, std::vector<int> q, std::vector<double> p = {}) {
    emit(GateOp{k, std::move(q), std::move(p)});
  }

  [[noreturn]] void fail(const GateOp& op) const {
    throw Error(ErrorKind::Validation,
                "cannot express " + std::string(op.name()) + " in the target basis");
  }

  void one_qubit(const GateOp& op) {
    const int q = op.qubits[0];
    // exact Clifford rewrites first, so Clifford-only bases still work
    if (op.kind == GateKind::Z && has("s")) {
      put(GateKind::S, {q});
      put(GateKind::S, {q});
      return;
    }
    if (op.kind == GateKind::Sdg && has("s")) {
      for (int i = 0; i < 3; ++i) put(GateKind::S, {q});
      return;
    }
    if (op.kind == GateKind::RZ && family_ == Family::R) {
      // Rz(mu) = R(pi, mu/2) R(pi, 0) up to phase
      put(GateKind::R, {q}, {kPi, 0.0});
      put(GateKind::R, {q}, {kPi, op.params[0] / 2});
      return;
    }
    if (family_ == Family::None) fail(op);
    ZyzAngles a = zyz_decompose(single_qubit_matrix(op));
    switch (family_) {
      case Family::ZY:
        put(GateKind::RZ, {q}, {a.lambda});
        put(GateKind::RY, {q}, {a.theta});
        put(GateKind::RZ, {q}, {a.phi});
        break;
      case Family::ZX:
        put(GateKind::RZ, {q}, {a.lambda - kPi / 2});
        put(GateKind::RX, {q}, {a.theta});
        put(GateKind::RZ, {q}, {a.phi + kPi / 2});
        break;
      case Family::R:
        // Rz(phi) Ry(theta) Rz(lambda) = R(theta, pi/2 + phi) Rz(phi + lambda)
        put(GateKind::RZ, {q}, {a.phi + a.lambda});
        put(GateKind::R, {q}, {a.theta, kPi / 2 + a.phi});
        break;
      case Family::None: break;
    }
  }

  void two_qubit(const GateOp& op) {
    const int a = op.qubits[0], b = op.qubits[1];
    switch (op.kind) {
      case GateKind::CX:
        if (!has("cz") && !has("rzz")) fail(op);
        put(GateKind::H, {b});
        put(GateKind::CZ, {a, b});
        put(GateKind::H, {b});
        return;
      case GateKind::CZ:
        if (has("cx")) {
          put(GateKind::H, {b});
          put(GateKind::CX, {a, b});
          put(GateKind::H, {b});
        } else if (has("rzz")) {
          put(GateKind::RZZ, {a, b}, {-kPi / 2});
          put(GateKind::RZ, {a}, {kPi / 2});
          put(GateKind::RZ, {b}, {kPi / 2});
        } else {
          fail(op);
        }
        return;
      case GateKind::Swap:
        require_entangler(op);
        put(GateKind::CX, {a, b});
        put(GateKind::CX, {b, a});
        put(GateKind::CX, {a, b});
        return;
      case GateKind::RZZ:
        require_entangler(op);
        put(GateKind::CX, {a, b});
        put(GateKind::RZ, {b}, {op.params[0]});
        put(GateKind::CX, {a, b});
        return;
      case GateKind::ISwap:
        require_entangler(op);
        put(GateKind::S, {a});
        put(GateKind::S, {b});
        put(GateKind::H, {a});
        put(GateKind::CX, {a, b});
        put(GateKind::CX, {b, a});
        put(GateKind::H, {b});
        return;
      default: fail(op);
    }
  }

  void require_entangler(const GateOp& op) const {
    if (!has("cx") && !has("cz") && !has("rzz")) fail(op);
  }

  const std::set<std::string>& basis_;
  Circuit& out_;
  Family family_ = Family::None;
};

bool is_rotation(GateKind k) {
  return k == GateKind::RX || k == GateKind::RY || k == GateKind::RZ || k == GateKind::RZZ ||
         k == GateKind::R;
}

bool symmetric(GateKind k) {
  return k == GateKind::CZ || k == GateKind::Swap || k == GateKind::RZZ;
}

bool same_support(const GateOp& a, const GateOp& b) {
  if (a.qubits == b.qubits) return true;
  return (symmetric(a.kind) || a.kind == GateKind::ISwap) && a.qubits.size() == 2 && a.qubits[0] == b.qubits[1] &&
         a.qubits[1] == b.qubits[0];
}

bool cancels(const GateOp& prev, const GateOp& op) {
  if (!same_support(prev, op)) return false;
  switch (op.kind) {
    case GateKind::H: case GateKind::X: case GateKind::Y: case GateKind::Z:
    case GateKind::CX: case GateKind::CZ: case GateKind::Swap:
      return prev.kind == op.kind;
    case GateKind::S: return prev.kind == GateKind::Sdg;
    case GateKind::Sdg: return prev.kind == GateKind::S;
    default: return false;
  }
}

/// Angle reduced to (-pi, pi]; a 2 pi rotation is -I, a global phase.
double wrap(double t) {
  double w = std::remainder(t, 2 * kPi);
  return w <= -kPi ? w + 2 * kPi : w;
}

}  // namespace

Circuit lower_to_basis(const Circuit& c, const std::set<std::string>& basis_gates) {
  for (const auto& g : basis_gates) {
    auto k = gate_kind_from_name(g);
    if (!k || !gate_info(*k).unitary) {
      throw Error(ErrorKind::Validation, "unsupported basis gate '" + g + "'");
    }
  }
  Circuit out(c.num_qubits());
  out.metadata() = c.metadata();
  Lowering lower(basis_gates, out);
  for (const auto& op : c.ops()) lower.emit(op);
  return out;
}

Circuit cancel_adjacent_inverses(const Circuit& c) {
  std::vector<std::optional<GateOp>> kept;
  std::vector<std::vector<std::size_t>> wire(c.num_qubits());

  auto top_shared = [&](const GateOp& op) -> std::optional<std::size_t> {
    std::optional<std::size_t> idx;
    for (int q : op.qubits) {
      if (wire[q].empty()) return std::nullopt;
      if (idx && *idx != wire[q].back()) return std::nullopt;
      idx = wire[q].back();
    }
    return idx;
  };
  auto drop = [&](std::size_t i) {
    for (int q : kept[i]->qubits) wire[q].pop_back();
    kept[i].reset();
  };

  std::function<void(const GateOp&)> process = [&](const GateOp& op) {
    if (op.is_unitary()) {
      if (auto i = top_shared(op)) {
        GateOp& prev = *kept[*i];
        if (cancels(prev, op)) {
          drop(*i);
          return;
        }
        if (op.kind == GateKind::ISwap && prev.kind == GateKind::ISwap && same_support(prev, op)) {
          // iswap iswap = Z (x) Z
          drop(*i);
          process(GateOp{GateKind::Z, {op.qubits[0]}, {}});
          process(GateOp{GateKind::Z, {op.qubits[1]}, {}});
          return;
        }
        bool mergeable = prev.kind == op.kind && is_rotation(op.kind) && same_support(prev, op) &&
                         (op.kind != GateKind::R || prev.params[1] == op.params[1]);
        if (mergeable) {
          prev.params[0] = wrap(prev.params[0] + op.params[0]);
          if (std::abs(prev.params[0]) < 1e-12) drop(*i);
          return;
        }
      }
    }
    kept.emplace_back(op);
    for (int q : op.qubits) wire[q].push_back(kept.size() - 1);
  };
  for (const auto& op : c.ops()) process(op);

  Circuit out(c.num_qubits());
  out.metadata() = c.metadata();
  for (auto& op : kept) {
    if (op) out.append(std::move(*op));
  }
  return out;
}

}  // namespace qbench
