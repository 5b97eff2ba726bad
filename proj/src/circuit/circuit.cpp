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
#include "qbench/circuit/circuit.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <set>

#include "qbench/common/error.hpp"

namespace qbench {
namespace {

constexpr std::array<GateInfo, 18> kGates = {{
    {"h", 1, 0, true, true},
    {"x", 1, 0, true, true},
    {"y", 1, 0, true, true},
    {"z", 1, 0, true, true},
    {"s", 1, 0, true, true},
    {"sdg", 1, 0, true, true},
    {"cx", 2, 0, true, true},
    {"cz", 2, 0, true, true},
    {"swap", 2, 0, true, true},
    {"rx", 1, 1, false, true},
    {"ry", 1, 1, false, true},
    {"rz", 1, 1, false, true},
    {"rzz", 2, 1, false, true},
    {"r", 1, 2, false, true},
    {"iswap", 2, 0, false, true},
    {"reset", 1, 0, true, false},
    {"measure", 1, 0, true, false},
    {"barrier", -1, 0, true, false},
}};

Error circuit_error(const std::string& msg) {
  return Error(ErrorKind::Validation, "circuit: " + msg);
}

}  // namespace

const GateInfo& gate_info(GateKind kind) {
  return kGates[static_cast<std::size_t>(kind)];
}

std::optional<GateKind> gate_kind_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kGates.size(); ++i) {
    if (kGates[i].name == name) return static_cast<GateKind>(i);
  }
  return std::nullopt;
}

Circuit::Circuit(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 0) throw circuit_error("negative qubit count");
}

Circuit& Circuit::append(GateOp op) {
  const GateInfo& info = gate_info(op.kind);
  if (info.arity >= 0 && static_cast<int>(op.qubits.size()) != info.arity) {
    throw circuit_error(std::string(info.name) + " expects " +
                        std::to_string(info.arity) + " qubit(s)");
  }
  if (static_cast<int>(op.params.size()) != info.num_params) {
    throw circuit_error(std::string(info.name) + " expects " +
                        std::to_string(info.num_params) + " parameter(s)");
  }
  std::set<int> seen;
  for (int q : op.qubits) {
    if (q < 0 || q >= num_qubits_) {
      throw circuit_error("qubit index " + std::to_string(q) + " out of range");
    }
    if (!seen.insert(q).second) throw circuit_error("repeated qubit in one op");
  }
  for (double p : op.params) {
    if (!std::isfinite(p)) throw circuit_error("non-finite angle");
  }
  if (op.kind == GateKind::Measure) {
    if (op.clbit < 0) throw circuit_error("measure without classical bit");
    if (op.clbit >= num_clbits_) {
      num_clbits_ = op.clbit + 1;
      clbit_used_.resize(num_clbits_, false);
    }
    if (clbit_used_[op.clbit]) {
      throw circuit_error("classical bit " + std::to_string(op.clbit) + " written twice");
    }
    clbit_used_[op.clbit] = true;
  } else {
    op.clbit = -1;
  }
  ops_.push_back(std::move(op));
  return *this;
}

Circuit& Circuit::gate1(GateKind k, int q, std::vector<double> params) {
  return append(GateOp{k, {q}, std::move(params)});
}

Circuit& Circuit::gate2(GateKind k, int a, int b, std::vector<double> params) {
  return append(GateOp{k, {a, b}, std::move(params)});
}

Circuit& Circuit::measure(int q, int clbit) {
  if (clbit < 0) clbit = num_clbits_;
  return append(GateOp{GateKind::Measure, {q}, {}, clbit});
}

Circuit& Circuit::measure_all() {
  for (int q = 0; q < num_qubits_; ++q) measure(q);
  return *this;
}

Circuit& Circuit::barrier(std::vector<int> qubits) {
  if (qubits.empty()) {
    for (int q = 0; q < num_qubits_; ++q) qubits.push_back(q);
  }
  return append(GateOp{GateKind::Barrier, std::move(qubits), {}});
}

void Circuit::validate() const {
  Circuit copy(num_qubits_);
  for (const auto& op : ops_) copy.append(op);
}

GateCounts Circuit::counts() const {
  GateCounts c;
  for (const auto& op : ops_) {
    switch (op.kind) {
      case GateKind::Measure: ++c.measure; break;
      case GateKind::Reset: ++c.reset; break;
      case GateKind::Barrier: break;
      default:
        if (op.is_two_qubit()) ++c.two_qubit; else ++c.one_qubit;
    }
  }
  return c;
}

bool Circuit::is_clifford() const {
  for (const auto& op : ops_) {
    if (!gate_info(op.kind).clifford) return false;
  }
  return true;
}

bool Circuit::has_reset() const {
  for (const auto& op : ops_) {
    if (op.kind == GateKind::Reset) return true;
  }
  return false;
}

std::vector<int> Circuit::measured_qubits() const {
  std::vector<int> out(num_clbits_, -1);
  for (const auto& op : ops_) {
    if (op.kind == GateKind::Measure) out[op.clbit] = op.qubits[0];
  }
  return out;
}

std::vector<GateOp> inverse_ops(const GateOp& op) {
  switch (op.kind) {
    case GateKind::S: return {GateOp{GateKind::Sdg, op.qubits, {}}};
    case GateKind::Sdg: return {GateOp{GateKind::S, op.qubits, {}}};
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::RZZ: return {GateOp{op.kind, op.qubits, {-op.params[0]}}};
    case GateKind::R: return {GateOp{GateKind::R, op.qubits, {-op.params[0], op.params[1]}}};
    case GateKind::ISwap: {
      // iswap^2 = Z(x)Z, so the inverse is iswap followed by Z on both qubits.
      return {GateOp{GateKind::ISwap, op.qubits, {}},
              GateOp{GateKind::Z, {op.qubits[0]}, {}},
              GateOp{GateKind::Z, {op.qubits[1]}, {}}};
    }
    case GateKind::Reset:
    case GateKind::Measure:
      throw circuit_error("cannot invert non-unitary op");
    default: return {op};
  }
}

Circuit Circuit::inverse() const {
  Circuit out(num_qubits_);
  for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) {
    for (auto& inv : inverse_ops(*it)) out.append(std::move(inv));
  }
  return out;
}

json Circuit::to_json() const {
  json ops = json::array();
  for (const auto& op : ops_) {
    json o = {{"name", std::string(op.name())}, {"qubits", op.qubits}};
    if (!op.params.empty()) o["params"] = op.params;
    if (op.kind == GateKind::Measure) o["clbit"] = op.clbit;
    ops.push_back(std::move(o));
  }
  return {{"num_qubits", num_qubits_}, {"ops", ops}, {"metadata", metadata_}};
}

Circuit Circuit::from_json(const json& j) {
  Circuit c(j.at("num_qubits").get<int>());
  for (const auto& o : j.at("ops")) {
    auto kind = gate_kind_from_name(o.at("name").get<std::string>());
    if (!kind) throw circuit_error("unknown gate " + o.at("name").get<std::string>());
    GateOp op{*kind, o.at("qubits").get<std::vector<int>>(),
              o.value("params", std::vector<double>{}), o.value("clbit", -1)};
    c.append(std::move(op));
  }
  if (j.contains("metadata")) c.metadata_ = j.at("metadata");
  return c;
}

}  // namespace qbench
