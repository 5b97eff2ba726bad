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
#include "qbench/bench/app.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

#include "qbench/common/error.hpp"
#include "qbench/common/rng.hpp"
#include "qbench/sim/sampler.hpp"
#include "qbench/sim/statevector.hpp"

namespace qbench {

namespace {

double width_weighted(const std::map<int, double>& values, const std::vector<int>& grid) {
  double total = 0.0, acc = 0.0;
  for (int n : grid) {
    total += n;
    auto it = values.find(n);
    if (it != values.end()) acc += n * it->second;
  }
  return acc / total;
}

// Chain layout for an n-qubit application circuit, or nullopt when the
// device cannot host it.
std::optional<std::vector<int>> chain_layout(const DeviceModel& device, int n,
                                             std::uint64_t seed) {
  if (n > device.num_qubits()) return std::nullopt;
  if (n == 1) return std::vector<int>{0};
  try {
    return sample_random_chain(device.coupling, n, derive_seed(seed, "layout"));
  } catch (const ChainNotFound&) {
    return std::nullopt;
  }
}

std::string value_bits(int n, std::uint64_t v) {
  std::string s(n, '0');
  for (int q = 0; q < n; ++q) s[q] = ((v >> (n - 1 - q)) & 1) ? '1' : '0';
  return s;
}

}  // namespace

Circuit embed_circuit(const Circuit& logical, const std::vector<int>& layout, int device_qubits) {
  if (static_cast<int>(layout.size()) < logical.num_qubits()) {
    throw std::invalid_argument("embed_circuit: layout smaller than the circuit");
  }
  Circuit c(device_qubits);
  for (GateOp op : logical.ops()) {
    for (int& q : op.qubits) q = layout[q];
    c.append(std::move(op));
  }
  c.metadata() = logical.metadata();
  return c;
}

// ---------------------------------------------------------------- QML kernel

json QmlKernelResult::to_json() const {
  return {{"num_qubits", num_qubits}, {"supported", supported}, {"accuracy", accuracy},
          {"shots", shots}, {"angles", angles}};
}

std::vector<double> sample_qml_angles(int n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> x(n);
  for (double& v : x) v = 2 * M_PI * uniform01(rng);
  return x;
}

Circuit build_qml_feature_map(const std::vector<double>& x) {
  const int n = static_cast<int>(x.size());
  if (n < 2) throw std::invalid_argument("qml: at least 2 qubits");
  Circuit c(n);
  for (int q = 0; q < n; ++q) c.h(q);
  for (int q = 0; q < n; ++q) c.rz(q, x[q]);
  for (int start : {0, 1}) {
    for (int i = start; i + 1 < n; i += 2) {
      int j = i + 1;
      c.cx(i, j).rz(j, (M_PI - x[i]) * (M_PI - x[j])).cx(i, j);
    }
  }
  return c;
}

Circuit build_qml_overlap(const std::vector<double>& x, bool with_barrier) {
  Circuit u = build_qml_feature_map(x);
  Circuit c = u;
  if (with_barrier) c.barrier();
  const Circuit inv = u.inverse();
  for (const auto& op : inv.ops()) c.append(op);
  c.measure_all();
  return c;
}

QmlKernelResult qml_kernel_run(const DeviceModel& device, int num_qubits, std::int64_t shots,
                               std::uint64_t seed) {
  QmlKernelResult r;
  r.num_qubits = num_qubits;
  r.shots = shots;
  r.angles = sample_qml_angles(num_qubits, derive_seed(seed, "angles"));
  auto layout = chain_layout(device, num_qubits, seed);
  if (!layout || num_qubits > kStatevectorMaxQubits) {
    r.supported = false;
    return r;
  }
  Circuit c = embed_circuit(build_qml_overlap(r.angles), *layout, device.num_qubits());
  CountsMap counts = sample_counts(c, shots, device.noise, derive_seed(seed, "exec"));
  r.accuracy = counts.probability(std::string(num_qubits, '0'));
  return r;
}

double qmlk_score(const std::map<int, double>& accuracy) {
  return width_weighted(accuracy, {10, 20, 30, 50});
}

// ---------------------------------------------------------------- WIT

json WitResult::to_json() const {
  return {{"num_qubits", num_qubits},
          {"supported", supported},
          {"expectation", expectation},
          {"f2q_proxy", f2q_proxy ? json(*f2q_proxy) : json(nullptr)},
          {"shots", shots}};
}

namespace {

// Rotation angles (units of pi) of the three evolution layers on the
// triangle (t0, t1, t2): Rx(a), Rzz(pi/2) on every triangle edge, Rz(b), Rx(c).
constexpr double kWitA[3][3] = {{0.5, 1, -0.5}, {1, -0.5, 1}, {0.5, -0.5, 0.5}};
constexpr double kWitB[3][3] = {{-0.5, -0.5, 1}, {1, -0.5, 1}, {1, 0.5, 1}};
constexpr double kWitC[3][3] = {{0.5, 0.5, -0.5}, {1, 0.5, -0.5}, {1, -0.5, -0.5}};
constexpr double kCoupling = M_PI / 2;

Circuit wit_evolution(int num_qubits, const std::array<int, 3>& t) {
  Circuit c(num_qubits);
  for (int l = 0; l < 3; ++l) {
    for (int q = 0; q < 3; ++q) c.rx(t[q], kWitA[l][q] * M_PI);
    c.rzz(t[0], t[1], kCoupling).rzz(t[1], t[2], kCoupling).rzz(t[0], t[2], kCoupling);
    for (int q = 0; q < 3; ++q) c.rz(t[q], kWitB[l][q] * M_PI);
    for (int q = 0; q < 3; ++q) c.rx(t[q], kWitC[l][q] * M_PI);
  }
  return c;
}

}  // namespace

Circuit build_wit_circuit(int num_qubits) {
  if (num_qubits != 6 && num_qubits != 7) {
    throw std::invalid_argument("wit: num_qubits must be 6 or 7");
  }
  Circuit c(num_qubits);
  auto add = [&](const Circuit& part) {
    for (const auto& op : part.ops()) c.append(op);
  };
  int readout;
  if (num_qubits == 7) {
    for (int q : {1, 2, 3}) c.h(q);
    c.cx(1, 4).cx(2, 5).cx(3, 6);
    add(wit_evolution(7, {0, 1, 2}));
    c.swap(0, 6);
    add(wit_evolution(7, {6, 1, 2}).inverse());
    readout = 6;
  } else {
    for (int q : {0, 1, 2}) c.h(q);
    c.cx(0, 3).cx(1, 4).cx(2, 5);
    add(wit_evolution(6, {0, 1, 2}));
    c.reset(0);
    add(wit_evolution(6, {0, 1, 2}).inverse());
    readout = 2;
  }
  c.rzz(1, 4, kCoupling).rzz(2, 5, kCoupling);
  c.measure(readout, 0);
  return c;
}

std::optional<double> wit_f2q_proxy(double expectation) {
  if (expectation <= 0.0) return std::nullopt;
  return std::pow(expectation, 1.0 / 24.0);
}

WitResult wit_run(const DeviceModel& device, int num_qubits, std::int64_t shots,
                  std::uint64_t seed) {
  WitResult r;
  r.num_qubits = num_qubits;
  r.shots = shots;
  Circuit logical = build_wit_circuit(num_qubits);
  auto layout = chain_layout(device, num_qubits, seed);
  if (!layout) {
    r.supported = false;
    return r;
  }
  CountsMap counts = sample_counts(embed_circuit(logical, *layout, device.num_qubits()), shots,
                                   device.noise, derive_seed(seed, "exec"));
  r.expectation = expectation_z(counts, 0);
  r.f2q_proxy = wit_f2q_proxy(r.expectation);
  return r;
}

// ---------------------------------------------------------------- LR-QAOA

double MaxCutInstance::cut_value(const std::string& bits) const {
  double v = 0.0;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (bits[edges[i].first] != bits[edges[i].second]) v += weights[i];
  }
  return v;
}

json MaxCutInstance::to_json() const {
  json e = json::array();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    e.push_back({{"edge", {edges[i].first, edges[i].second}}, {"weight", weights[i]}});
  }
  return {{"num_vertices", num_vertices}, {"edges", e},
          {"optimal_bitstring", optimal_bitstring}, {"optimal_value", optimal_value}};
}

MaxCutInstance make_maxcut_instance(int n, std::vector<Edge> edges, std::uint64_t seed) {
  MaxCutInstance inst;
  inst.num_vertices = n;
  Rng rng(derive_seed(seed, "weights"));
  for (auto& e : edges) {
    e = make_edge(e.first, e.second);
    if (e.first < 0 || e.second >= n || e.first == e.second) {
      throw std::invalid_argument("maxcut: edge outside the vertex set");
    }
    inst.weights.push_back(kMaxCutWeights[uniform_below(rng, kMaxCutWeights.size())]);
  }
  inst.edges = std::move(edges);
  auto [bits, value] = solve_maxcut_annealing(inst, derive_seed(seed, "anneal"));
  inst.optimal_bitstring = bits;
  inst.optimal_value = value;
  return inst;
}

std::pair<std::string, double> solve_maxcut_annealing(const MaxCutInstance& inst,
                                                      std::uint64_t seed) {
  const int n = inst.num_vertices;
  std::vector<std::vector<std::pair<int, double>>> adj(n);
  double wmax = 0.0, wmin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < inst.edges.size(); ++i) {
    auto [a, b] = inst.edges[i];
    adj[a].emplace_back(b, inst.weights[i]);
    adj[b].emplace_back(a, inst.weights[i]);
    wmax = std::max(wmax, inst.weights[i]);
    wmin = std::min(wmin, inst.weights[i]);
  }
  std::string best(n, '0');
  double best_value = 0.0;
  if (inst.edges.empty()) return {best, 0.0};

  Rng rng(seed);
  const int restarts = 16;
  const long steps = 400L * n;
  const double t_hi = 2.0 * wmax, t_lo = 0.01 * wmin;
  for (int r = 0; r < restarts; ++r) {
    std::string x(n, '0');
    for (auto& ch : x) ch = uniform_below(rng, 2) ? '1' : '0';
    double cur = inst.cut_value(x);
    if (cur > best_value) { best = x; best_value = cur; }
    for (long s = 0; s < steps; ++s) {
      double temp = t_hi * std::pow(t_lo / t_hi, static_cast<double>(s) / (steps - 1));
      int v = static_cast<int>(uniform_below(rng, n));
      double delta = 0.0;
      for (auto [u, w] : adj[v]) delta += x[u] == x[v] ? w : -w;
      if (delta >= 0.0 || uniform01(rng) < std::exp(delta / temp)) {
        x[v] = x[v] == '0' ? '1' : '0';
        cur += delta;
        if (cur > best_value + 1e-12) { best = x; best_value = cur; }
      }
    }
  }
  return {best, inst.cut_value(best)};
}

std::pair<std::string, double> solve_maxcut_brute_force(const MaxCutInstance& inst) {
  const int n = inst.num_vertices;
  if (n > 24) throw std::invalid_argument("maxcut brute force: too many vertices");
  std::string best(n, '0');
  double best_value = -1.0;
  std::string x(n, '0');
  for (std::uint64_t m = 0; m < (1ULL << n); ++m) {
    for (int i = 0; i < n; ++i) x[i] = ((m >> i) & 1) ? '1' : '0';
    double v = inst.cut_value(x);
    if (v > best_value) { best_value = v; best = x; }
  }
  return {best, best_value};
}

QaoaSchedule linear_ramp(int p, double delta_beta, double delta_gamma) {
  if (p < 1) throw std::invalid_argument("qaoa: p must be >= 1");
  QaoaSchedule s{p, delta_beta, delta_gamma, {}, {}};
  for (int j = 1; j <= p; ++j) {
    s.gammas.push_back(j * delta_gamma / p);
    s.betas.push_back((p + 1 - j) * delta_beta / p);
  }
  return s;
}

Circuit build_lr_qaoa_circuit(const MaxCutInstance& inst, const QaoaSchedule& schedule) {
  Circuit c(inst.num_vertices);
  for (int q = 0; q < inst.num_vertices; ++q) c.h(q);
  for (int j = 0; j < schedule.p; ++j) {
    for (std::size_t i = 0; i < inst.edges.size(); ++i) {
      c.rzz(inst.edges[i].first, inst.edges[i].second, 2 * schedule.gammas[j] * inst.weights[i]);
    }
    // the negative mixer angle ramps toward the maximum cut
    for (int q = 0; q < inst.num_vertices; ++q) c.rx(q, -2 * schedule.betas[j]);
  }
  c.measure_all();
  return c;
}

WelchTest welch_one_sided(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("welch: empty sample");
  auto moments = [](const std::vector<double>& v) {
    double m = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::pair{m, v.size() > 1 ? s / (v.size() - 1) : 0.0};
  };
  auto [m1, v1] = moments(a);
  auto [m2, v2] = moments(b);
  double n1 = a.size(), n2 = b.size();
  double e1 = v1 / n1, e2 = v2 / n2;
  WelchTest w;
  if (e1 + e2 <= 0.0) {
    w.dof = n1 + n2 - 2;
    w.t = m1 > m2 ? std::numeric_limits<double>::infinity()
                  : (m1 < m2 ? -std::numeric_limits<double>::infinity() : 0.0);
    w.p_value = m1 > m2 ? 0.0 : (m1 < m2 ? 1.0 : 0.5);
    return w;
  }
  w.t = (m1 - m2) / std::sqrt(e1 + e2);
  double den = (n1 > 1 ? e1 * e1 / (n1 - 1) : 0.0) + (n2 > 1 ? e2 * e2 / (n2 - 1) : 0.0);
  w.dof = den > 0.0 ? (e1 + e2) * (e1 + e2) / den : n1 + n2 - 2;
  boost::math::students_t dist(std::max(w.dof, 1e-3));
  w.p_value = boost::math::cdf(boost::math::complement(dist, w.t));
  return w;
}

json LrQaoaResult::to_json() const {
  return {{"num_qubits", num_qubits},
          {"p", p},
          {"supported", supported},
          {"approximation_ratio", approximation_ratio},
          {"random_ratio", random_ratio},
          {"effective_ratio", effective_ratio},
          {"optimal_hit_prob", optimal_hit_prob},
          {"trial_ratios", trial_ratios},
          {"random_trial_ratios", random_trial_ratios},
          {"t_statistic", std::isfinite(t_test.t) ? json(t_test.t) : json(nullptr)},
          {"dof", t_test.dof},
          {"p_value", t_test.p_value},
          {"confidence_level", confidence},
          {"t_test_pass", t_test_pass}};
}

double effective_ratio(double r, double r_random) {
  if (r_random >= 1.0) throw std::invalid_argument("effective_ratio: random ratio must be < 1");
  return (r - r_random) / (1.0 - r_random);
}

double approximation_ratio(const MaxCutInstance& inst, const CountsMap& counts) {
  if (inst.optimal_value <= 0.0 || counts.shots == 0) return 0.0;
  double acc = 0.0;
  for (const auto& [bits, n] : counts.counts) acc += n * inst.cut_value(bits);
  return acc / counts.shots / inst.optimal_value;
}

CountsMap sample_uniform_counts(int n, std::int64_t shots, std::uint64_t seed) {
  Rng rng(seed);
  CountsMap c;
  std::string s(n, '0');
  for (std::int64_t i = 0; i < shots; ++i) {
    for (auto& ch : s) ch = (rng() >> 63) ? '1' : '0';
    c.add(s);
  }
  return c;
}

LrQaoaResult evaluate_lr_qaoa(const MaxCutInstance& inst, const std::vector<CountsMap>& trials,
                              const std::vector<CountsMap>& random_trials, double confidence) {
  LrQaoaResult r;
  r.num_qubits = inst.num_vertices;
  r.confidence = confidence;
  auto pooled = [&](const std::vector<CountsMap>& runs, std::vector<double>& per) {
    double acc = 0.0;
    std::int64_t total = 0;
    for (const auto& c : runs) {
      per.push_back(approximation_ratio(inst, c));
      acc += per.back() * c.shots;
      total += c.shots;
    }
    return total > 0 ? acc / total : 0.0;
  };
  r.approximation_ratio = pooled(trials, r.trial_ratios);
  r.random_ratio = pooled(random_trials, r.random_trial_ratios);
  r.effective_ratio = effective_ratio(r.approximation_ratio, r.random_ratio);
  std::int64_t hits = 0, total = 0;
  for (const auto& c : trials) {
    for (const auto& [bits, n] : c.counts) {
      if (inst.cut_value(bits) >= inst.optimal_value - 1e-9) hits += n;
    }
    total += c.shots;
  }
  r.optimal_hit_prob = total > 0 ? static_cast<double>(hits) / total : 0.0;
  r.t_test = welch_one_sided(r.trial_ratios, r.random_trial_ratios);
  r.t_test_pass = r.t_test.p_value < 1.0 - confidence;
  return r;
}

QaoaGraph qaoa_graph_from_string(const std::string& name) {
  if (name == "1D") return QaoaGraph::Line;
  if (name == "NL") return QaoaGraph::NativeLayout;
  if (name == "FC") return QaoaGraph::FullyConnected;
  throw std::invalid_argument("unknown graph type: " + name);
}

std::pair<MaxCutInstance, std::vector<int>> lr_qaoa_instance(const DeviceModel& device,
                                                             QaoaGraph graph, int n,
                                                             std::uint64_t seed) {
  if (n < 2 || n > device.num_qubits()) {
    throw std::invalid_argument("lr-qaoa: graph size outside the device");
  }
  std::vector<int> layout;
  std::vector<Edge> edges;
  switch (graph) {
    case QaoaGraph::Line:
      layout = sample_random_chain(device.coupling, n, derive_seed(seed, "layout"));
      for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
      break;
    case QaoaGraph::NativeLayout: {
      Rng rng(derive_seed(seed, "layout"));
      layout = sample_connected_region(device.coupling, n, rng);
      edges = device.coupling.induced(layout).edges();
      break;
    }
    case QaoaGraph::FullyConnected:
      if (!device.all_to_all()) {
        throw Error(ErrorKind::Validation,
                    "lr-qaoa: fully connected graphs need an all-to-all device (no SWAP network)");
      }
      layout.resize(n);
      std::iota(layout.begin(), layout.end(), 0);
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
      }
      break;
  }
  return {make_maxcut_instance(n, std::move(edges), derive_seed(seed, "instance")), layout};
}

std::vector<LrQaoaResult> lr_qaoa_run(const DeviceModel& device, QaoaGraph graph, int n,
                                      const std::vector<int>& p_list, double delta_beta,
                                      double delta_gamma, std::int64_t shots, int trials,
                                      int num_random_trials, double confidence,
                                      std::uint64_t seed) {
  std::vector<LrQaoaResult> out;
  if (n > kStatevectorMaxQubits || n > device.num_qubits()) {
    for (int p : p_list) {
      LrQaoaResult r;
      r.num_qubits = n;
      r.p = p;
      r.supported = false;
      r.confidence = confidence;
      out.push_back(r);
    }
    return out;
  }
  auto [inst, layout] = lr_qaoa_instance(device, graph, n, seed);
  std::vector<CountsMap> random;
  for (int k = 0; k < num_random_trials; ++k) {
    random.push_back(sample_uniform_counts(n, shots, derive_seed(derive_seed(seed, "random"), k)));
  }
  for (int p : p_list) {
    Circuit c = embed_circuit(build_lr_qaoa_circuit(inst, linear_ramp(p, delta_beta, delta_gamma)),
                              layout, device.num_qubits());
    std::vector<CountsMap> runs;
    for (int t = 0; t < trials; ++t) {
      runs.push_back(sample_counts(c, shots, device.noise,
                                   derive_seed(derive_seed(seed, "trial"), p * 100003ULL + t)));
    }
    LrQaoaResult r = evaluate_lr_qaoa(inst, runs, random, confidence);
    r.p = p;
    out.push_back(std::move(r));
  }
  return out;
}

double lr_qaoa_score(const std::map<int, double>& r_eff) {
  return width_weighted(r_eff, {10, 20, 50, 100});
}

// ---------------------------------------------------------------- QFT

namespace {

void controlled_phase(Circuit& c, int a, int b, double theta) {
  c.rz(a, theta / 2).cx(a, b).rz(b, -theta / 2).cx(a, b).rz(b, theta / 2);
}

}  // namespace

Circuit build_qft(int n) {
  if (n < 1) throw std::invalid_argument("qft: n must be >= 1");
  Circuit c(n);
  for (int q = 0; q < n; ++q) {
    c.h(q);
    for (int k = q + 1; k < n; ++k) controlled_phase(c, k, q, 2 * M_PI / std::pow(2.0, k - q + 1));
  }
  for (int q = 0; q < n / 2; ++q) c.swap(q, n - 1 - q);
  return c;
}

Circuit build_qft_benchmark_circuit(int n, std::uint64_t x, int method) {
  if (n < 1 || n > 62) throw std::invalid_argument("qft: width out of range");
  x &= (1ULL << n) - 1;
  Circuit c(n);
  auto add = [&](const Circuit& part) {
    for (const auto& op : part.ops()) c.append(op);
  };
  if (method == 1) {
    for (int q = 0; q < n; ++q) {
      if ((x >> (n - 1 - q)) & 1) c.x(q);
    }
    add(build_qft(n));
    // multiplying amplitude k by exp(2 pi i k / 2^n) shifts x by one
    for (int q = 0; q < n; ++q) c.rz(q, 2 * M_PI / std::pow(2.0, q + 1));
    add(build_qft(n).inverse());
  } else if (method == 2) {
    for (int q = 0; q < n; ++q) c.h(q);
    for (int q = 0; q < n; ++q) {
      double frac = std::fmod(static_cast<double>(x) / std::pow(2.0, q + 1), 1.0);
      c.rz(q, 2 * M_PI * frac);
    }
    add(build_qft(n).inverse());
  } else {
    throw std::invalid_argument("qft: method must be 1 or 2");
  }
  c.measure_all();
  return c;
}

std::string qft_expected_bitstring(int n, std::uint64_t x, int method) {
  std::uint64_t mask = (1ULL << n) - 1;
  return value_bits(n, method == 1 ? ((x & mask) + 1) & mask : x & mask);
}

double normalized_fidelity(const CountsMap& counts, const std::map<std::string, double>& ideal) {
  if (ideal.empty() || counts.shots == 0) return 0.0;
  const int n = static_cast<int>(ideal.begin()->first.size());
  double bc = 0.0, bc_unif = 0.0;
  const double p_unif = std::pow(0.5, n);
  for (const auto& [bits, p] : ideal) {
    bc += std::sqrt(p * counts.probability(bits));
    bc_unif += std::sqrt(p * p_unif);
  }
  double f = bc * bc, f_unif = bc_unif * bc_unif;
  if (f_unif >= 1.0) return 1.0;
  return std::max(0.0, (f - f_unif) / (1.0 - f_unif));
}

std::map<int, double> QftResult::fidelity_by_width() const {
  std::map<int, double> m;
  for (const auto& w : widths) m[w.num_qubits] = w.mean_fidelity;
  return m;
}

json QftResult::to_json() const {
  json ws = json::array();
  for (const auto& w : widths) {
    ws.push_back({{"num_qubits", w.num_qubits}, {"supported", w.supported},
                  {"inputs", w.inputs}, {"fidelities", w.fidelities},
                  {"mean_fidelity", w.mean_fidelity}});
  }
  json by = json::object();
  for (const auto& [n, f] : fidelity_by_width()) by[std::to_string(n)] = f;
  return {{"method", method}, {"max_circuits", max_circuits}, {"shots", shots},
          {"widths", ws}, {"fidelity_by_width", by}};
}

QftResult qft_run(const DeviceModel& device, int min_qubits, int max_qubits, int skip_qubits,
                  int max_circuits, std::int64_t shots, int method, std::uint64_t seed) {
  if (min_qubits < 1 || max_qubits < min_qubits || skip_qubits < 1 || max_circuits < 1) {
    throw std::invalid_argument("qft: invalid width sweep");
  }
  if (method != 1 && method != 2) throw std::invalid_argument("qft: method must be 1 or 2");
  QftResult r;
  r.method = method;
  r.max_circuits = max_circuits;
  r.shots = shots;
  for (int n = min_qubits; n <= max_qubits; n += skip_qubits) {
    QftWidthResult w;
    w.num_qubits = n;
    std::uint64_t wseed = derive_seed(seed, n);
    auto layout = chain_layout(device, n, wseed);
    if (!layout || n > kStatevectorMaxQubits) {
      w.supported = false;
      r.widths.push_back(w);
      continue;
    }
    Rng rng(derive_seed(wseed, "inputs"));
    const std::uint64_t space = 1ULL << n;
    std::set<std::uint64_t> used;
    for (int i = 0; i < max_circuits; ++i) {
      std::uint64_t x = uniform_below(rng, space);
      while (used.size() < space && used.count(x)) x = uniform_below(rng, space);
      used.insert(x);
      Circuit c = embed_circuit(build_qft_benchmark_circuit(n, x, method), *layout,
                                device.num_qubits());
      CountsMap counts = sample_counts(c, shots, device.noise, derive_seed(wseed, i));
      w.inputs.push_back(x);
      w.fidelities.push_back(normalized_fidelity(counts, {{qft_expected_bitstring(n, x, method), 1.0}}));
    }
    w.mean_fidelity =
        std::accumulate(w.fidelities.begin(), w.fidelities.end(), 0.0) / w.fidelities.size();
    r.widths.push_back(std::move(w));
  }
  return r;
}

double qft_score(const std::map<int, double>& fidelity) {
  return width_weighted(fidelity, {4, 8, 12, 20});
}

}  // namespace qbench
