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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qbench/circuit/circuit.hpp"
#include "qbench/circuit/device.hpp"
#include "qbench/sim/counts.hpp"

namespace qbench {

using json = nlohmann::json;

/// Copies \p logical onto a device register, logical qubit i -> layout[i].
Circuit embed_circuit(const Circuit& logical, const std::vector<int>& layout, int device_qubits);

// ---------------------------------------------------------------- QML kernel

struct QmlKernelResult {
  int num_qubits = 0;
  bool supported = true;
  double accuracy = 0.0;  // probability of the all-zero outcome
  std::int64_t shots = 0;
  std::vector<double> angles;

  json to_json() const;
};

/// n angles drawn uniformly from [0, 2pi].
std::vector<double> sample_qml_angles(int n, std::uint64_t seed);

/// Hadamards, Rz(x_i), then CX-Rz((pi-x_i)(pi-x_j))-CX on (0,1),(2,3),...
/// followed by (1,2),(3,4),...
Circuit build_qml_feature_map(const std::vector<double>& x);

/// U(x), barrier, U(x)^dagger, measure every qubit. Without the barrier a
/// peephole pass may cancel the whole circuit.
Circuit build_qml_overlap(const std::vector<double>& x, bool with_barrier = true);

QmlKernelResult qml_kernel_run(const DeviceModel& device, int num_qubits, std::int64_t shots,
                               std::uint64_t seed);

/// Sum over {10,20,30,50} of (n/110) * accuracy(n); missing widths count 0.
double qmlk_score(const std::map<int, double>& accuracy);

// ---------------------------------------------------------------- WIT

struct WitResult {
  int num_qubits = 0;
  bool supported = true;
  double expectation = 0.0;
  std::optional<double> f2q_proxy;
  std::int64_t shots = 0;

  json to_json() const;
};

/// Fixed 6- or 7-qubit teleportation circuit measuring one readout qubit into
/// classical bit 0.
Circuit build_wit_circuit(int num_qubits);

/// E^(1/24); absent for E <= 0.
std::optional<double> wit_f2q_proxy(double expectation);

WitResult wit_run(const DeviceModel& device, int num_qubits, std::int64_t shots, std::uint64_t seed);

// ---------------------------------------------------------------- LR-QAOA

inline const std::vector<double> kMaxCutWeights = {0.1, 0.2, 0.3, 0.5, 1.0};

struct MaxCutInstance {
  int num_vertices = 0;
  std::vector<Edge> edges;
  std::vector<double> weights;
  std::string optimal_bitstring;
  double optimal_value = 0.0;

  /// Character i of \p bits is vertex i.
  double cut_value(const std::string& bits) const;
  json to_json() const;
};

/// Seeded weights from kMaxCutWeights; optimum from simulated annealing.
MaxCutInstance make_maxcut_instance(int n, std::vector<Edge> edges, std::uint64_t seed);

std::pair<std::string, double> solve_maxcut_annealing(const MaxCutInstance& instance,
                                                      std::uint64_t seed);
/// Exhaustive search, for at most 24 vertices.
std::pair<std::string, double> solve_maxcut_brute_force(const MaxCutInstance& instance);

struct QaoaSchedule {
  int p = 0;
  double delta_beta = 0.0;
  double delta_gamma = 0.0;
  std::vector<double> gammas;  // gamma_j = j dg / p
  std::vector<double> betas;   // beta_j = (p + 1 - j) db / p
};

QaoaSchedule linear_ramp(int p, double delta_beta, double delta_gamma);

/// |+>^n, then per layer Rzz(2 gamma w) on every edge and Rx(-2 beta) on
/// every qubit; measures vertex i into classical bit i.
Circuit build_lr_qaoa_circuit(const MaxCutInstance& instance, const QaoaSchedule& schedule);

struct WelchTest {
  double t = 0.0;
  double dof = 0.0;
  double p_value = 1.0;  // one-sided, H1: mean(a) > mean(b)
};

WelchTest welch_one_sided(const std::vector<double>& a, const std::vector<double>& b);

struct LrQaoaResult {
  int num_qubits = 0;
  int p = 0;
  bool supported = true;
  double approximation_ratio = 0.0;
  double random_ratio = 0.0;
  double effective_ratio = 0.0;
  double optimal_hit_prob = 0.0;
  std::vector<double> trial_ratios;
  std::vector<double> random_trial_ratios;
  WelchTest t_test;
  double confidence = 0.0;
  bool t_test_pass = false;

  json to_json() const;
};

/// (r - r_random) / (1 - r_random).
double effective_ratio(double r, double r_random);

/// Ratio C(x)/C(x*) averaged over every shot of \p counts.
double approximation_ratio(const MaxCutInstance& instance, const CountsMap& counts);

/// Scores per-trial device counts against per-trial uniform-random counts.
LrQaoaResult evaluate_lr_qaoa(const MaxCutInstance& instance, const std::vector<CountsMap>& trials,
                              const std::vector<CountsMap>& random_trials, double confidence);

/// Uniformly random bitstrings for the random baseline.
CountsMap sample_uniform_counts(int n, std::int64_t shots, std::uint64_t seed);

enum class QaoaGraph { Line, NativeLayout, FullyConnected };
QaoaGraph qaoa_graph_from_string(const std::string& name);

/// The instance on \p device and the physical qubit of each vertex.
std::pair<MaxCutInstance, std::vector<int>> lr_qaoa_instance(const DeviceModel& device,
                                                             QaoaGraph graph, int n,
                                                             std::uint64_t seed);

std::vector<LrQaoaResult> lr_qaoa_run(const DeviceModel& device, QaoaGraph graph, int n,
                                      const std::vector<int>& p_list, double delta_beta,
                                      double delta_gamma, std::int64_t shots, int trials,
                                      int num_random_trials, double confidence,
                                      std::uint64_t seed);

/// (10 r10 + 20 r20 + 50 r50 + 100 r100) / 180; missing widths count 0.
double lr_qaoa_score(const std::map<int, double>& r_eff);

// ---------------------------------------------------------------- QFT

/// Textbook QFT with qubit 0 as the most significant bit, so that
/// QFT|x> = sum_k exp(2 pi i x k / 2^n) |k> / sqrt(2^n).
Circuit build_qft(int n);

/// Method 1: |x>, QFT, +1 in the Fourier basis, inverse QFT. Method 2:
/// Fourier-basis encoding of x, inverse QFT. Measures qubit i into bit i.
Circuit build_qft_benchmark_circuit(int n, std::uint64_t x, int method);

/// Ideal outcome (qubit 0 = most significant = leftmost character).
std::string qft_expected_bitstring(int n, std::uint64_t x, int method);

/// Hellinger fidelity against \p ideal, rescaled so the uniform distribution scores 0.
double normalized_fidelity(const CountsMap& counts, const std::map<std::string, double>& ideal);

struct QftWidthResult {
  int num_qubits = 0;
  bool supported = true;
  std::vector<std::uint64_t> inputs;
  std::vector<double> fidelities;
  double mean_fidelity = 0.0;
};

struct QftResult {
  int method = 1;
  int max_circuits = 0;
  std::int64_t shots = 0;
  std::vector<QftWidthResult> widths;

  std::map<int, double> fidelity_by_width() const;
  json to_json() const;
};

QftResult qft_run(const DeviceModel& device, int min_qubits, int max_qubits, int skip_qubits,
                  int max_circuits, std::int64_t shots, int method, std::uint64_t seed);

/// Sum over {4,8,12,20} of (n/44) * f(n); missing widths count 0.
double qft_score(const std::map<int, double>& fidelity);

}  // namespace qbench
