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
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qbench/circuit/circuit.hpp"
#include "qbench/circuit/device.hpp"
#include "qbench/sim/mirror.hpp"

namespace qbench {

using json = nlohmann::json;

// ---------------------------------------------------------------- BSEQ

struct BseqResult {
  int num_qubits = 0;
  std::map<Edge, double> per_edge_S;
  std::vector<Edge> violating_subgraph;  // edges with S > 2
  int lccs = 0;
  double connection_fraction = 0.0;  // lccs / num_qubits
  int num_circuits = 0;

  json to_json() const;
};

/// Number of color classes BSEQ uses on \p device (all-to-all devices default
/// to 2*ceil(log2 n) classes when \p max_colors is not given).
EdgeColoring bseq_coloring(const DeviceModel& device, std::optional<int> max_colors);

/// The four measurement-setting circuits for one color class. Setting k has
/// the first qubit of each edge in X when (k & 2) and the second when (k & 1).
std::array<Circuit, 4> bseq_circuits(int num_qubits, const std::vector<Edge>& color_class);

BseqResult bseq_run(const DeviceModel& device, std::int64_t shots,
                    std::optional<int> max_colors, std::uint64_t seed);

/// (7/8)*100*lccs/lccs_base + (1/8)*100*f/f_base.
double bseq_score(int lccs, double fraction, int base_lccs, double base_fraction);
double bseq_score(const BseqResult& result, const BseqResult& baseline);

// ---------------------------------------------------------------- EPLG

struct RbFit {
  double a = 0.0;
  double alpha = 1.0;
  double b = 0.0;
  double residual = 0.0;      // sum of squared errors
  double alpha_stderr = 0.0;  // from the Gauss-Newton normal matrix
  bool converged = true;

  json to_json() const;
};

/// F = ((4^m - 1) alpha + 1) / 4^m.
double process_fidelity(double alpha, int num_qubits);

/// Least-squares fit of a * alpha^l + b with b fixed to 1/2^m: log-linear
/// start on the points above b, refined by bounded Gauss-Newton.
RbFit fit_rb_decay(const std::vector<std::pair<double, double>>& points, int num_qubits);

/// 1 - lf^(1/n_2q).
double eplg_from_layer_fidelity(double layer_fidelity, int n_2q);

struct EplgElement {
  int sublayer = 0;
  std::vector<int> positions;  // chain positions; size 2 for gate pairs, 1 for idles
  std::vector<std::pair<double, double>> decay;  // (depth, mean survival)
  RbFit fit;
  double fidelity = 1.0;
};

struct EplgResult {
  std::vector<int> chain;
  std::vector<EplgElement> elements;
  double layer_fidelity = 1.0;
  int n_2q = 0;
  double eplg = 0.0;
  std::map<int, double> eplg_by_length;  // chain prefix length -> EPLG

  json to_json() const;
};

inline const std::vector<int> kEplgGrid = {10, 20, 50, 100};

/// Simultaneous direct RB on a random chain of \p n_chain qubits. Throws
/// ChainNotFound when no chain of that length is found.
/// Builds every direct-RB circuit eplg_run would execute, in the same order
/// and with the same seeds, handing each to \p visit.
void eplg_circuits(const DeviceModel& device, int n_chain, const std::vector<int>& lengths,
                   int num_samples, std::uint64_t seed,
                   const std::function<void(const Circuit&)>& visit);

EplgResult eplg_run(const DeviceModel& device, int n_chain, const std::vector<int>& lengths,
                    int num_samples, std::int64_t shots, std::uint64_t seed);

/// Layer fidelity and EPLG restricted to the first \p prefix chain qubits.
std::pair<double, double> eplg_prefix(const EplgResult& result, int prefix);

/// Coverage-weighted harmonic mean of 100*base/eplg over the grid; lengths
/// absent from \p eplg shrink the score.
double eplg_score(const std::map<int, double>& eplg, const std::map<int, double>& baseline,
                  const std::vector<int>& grid = kEplgGrid);

// ---------------------------------------------------------------- Mirror

struct MirrorResult {
  int width = 0;
  int num_layers = 0;
  bool supported = true;  // false when the device has fewer than width qubits
  std::int64_t matches = 0;
  std::int64_t shots = 0;
  double success_prob = 0.0;
  double polarization = 0.0;
  bool pass = false;  // success_prob > 1/e

  json to_json() const;
};

/// Random mirror spec on a connected region of \p g.
MirrorCircuitSpec generate_mirror_spec(const Graph& g, int width, int num_layers,
                                       double two_qubit_gate_prob, std::uint64_t seed);

/// max(0, (s - 2^-w) / (1 - 2^-w)).
double polarization(double success_prob, int width);

MirrorResult mirror_run(const DeviceModel& device, int width, int num_layers,
                        double two_qubit_gate_prob, int num_circuits, std::int64_t shots,
                        std::uint64_t seed);

inline const std::vector<std::pair<int, int>> kMirrorPanel = {
    {8, 64}, {16, 32}, {24, 16}, {32, 8}, {64, 4}, {128, 2}};

/// Width-weighted panel average; missing points count as 0.
double mc_score(const std::vector<std::optional<double>>& panel_polarizations);

// ---------------------------------------------------------------- CLOPS

enum class ClopsMode { Instantiated, Parameterized, Twirled };

ClopsMode clops_mode_from_string(const std::string& name);
std::string to_string(ClopsMode mode);

struct ClopsResult {
  int num_layers = 0;
  int num_circuits = 0;
  std::int64_t shots = 0;
  std::optional<double> t_total;  // absent without a timing model
  std::optional<double> clops;
  std::optional<double> steady_state_clops;

  json to_json() const;
};

/// L*M*S / t_total.
double clops_value(int num_layers, int num_circuits, std::int64_t shots, double t_total);

/// Layered template on a chain: each layer applies \p two_qubit_gate on one of
/// the chain's two disjoint pair sets, then random rotations on every qubit.
Circuit clops_circuit(const std::vector<int>& chain, int device_qubits, int num_layers,
                      const std::string& two_qubit_gate, std::uint64_t seed);

ClopsResult clops_run(const DeviceModel& device, int num_qubits, int num_layers,
                      int num_circuits, std::int64_t shots, ClopsMode mode,
                      const std::string& two_qubit_gate, std::uint64_t seed);

}  // namespace qbench
