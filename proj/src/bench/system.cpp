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
#include "qbench/bench/system.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qbench/common/rng.hpp"
#include "qbench/sim/clifford_group.hpp"
#include "qbench/sim/sampler.hpp"

namespace qbench {

namespace {

json edge_json(const Edge& e) { return json::array({e.first, e.second}); }

GateOp op1(GateKind k, int q, std::vector<double> params = {}) {
  return GateOp{k, {q}, std::move(params)};
}

GateKind native_two_qubit_gate(const DeviceModel& device) {
  const auto& b = device.basis_gates;
  if (!b.count("cz") && b.count("cx")) return GateKind::CX;
  return GateKind::CZ;
}

}  // namespace

// ---------------------------------------------------------------- BSEQ

json BseqResult::to_json() const {
  json edges = json::array();
  for (const auto& [e, s] : per_edge_S) edges.push_back({{"edge", edge_json(e)}, {"S", s}});
  json viol = json::array();
  for (const auto& e : violating_subgraph) viol.push_back(edge_json(e));
  return {{"num_qubits", num_qubits},
          {"per_edge_S", edges},
          {"violating_subgraph", viol},
          {"lccs", lccs},
          {"connection_fraction", connection_fraction},
          {"num_circuits", num_circuits}};
}

EdgeColoring bseq_coloring(const DeviceModel& device, std::optional<int> max_colors) {
  if (!max_colors && device.all_to_all() && device.num_qubits() > 2) {
    max_colors = 2 * static_cast<int>(std::ceil(std::log2(device.num_qubits())));
  }
  return edge_coloring(device.coupling, max_colors);
}

std::array<Circuit, 4> bseq_circuits(int num_qubits, const std::vector<Edge>& color_class) {
  std::array<Circuit, 4> out;
  for (int k = 0; k < 4; ++k) {
    Circuit c(num_qubits);
    for (const auto& [a, b] : color_class) {
      c.h(a).cx(a, b).ry(a, M_PI / 4);
    }
    for (std::size_t i = 0; i < color_class.size(); ++i) {
      auto [a, b] = color_class[i];
      if (k & 2) c.h(a);
      // ry(pi/2) reads out -X, which gives the (+, +, +, -) correlator signs
      if (k & 1) c.ry(b, M_PI / 2);
      c.measure(a, static_cast<int>(2 * i));
      c.measure(b, static_cast<int>(2 * i + 1));
    }
    c.metadata()["bseq_setting"] = k;
    out[k] = std::move(c);
  }
  return out;
}

BseqResult bseq_run(const DeviceModel& device, std::int64_t shots,
                    std::optional<int> max_colors, std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("bseq: shots must be >= 1");
  BseqResult r;
  r.num_qubits = device.num_qubits();
  EdgeColoring coloring = bseq_coloring(device, max_colors);
  std::uint64_t stream = 0;
  for (const auto& cls : coloring.classes) {
    auto circuits = bseq_circuits(r.num_qubits, cls);
    std::array<CountsMap, 4> counts;
    for (int k = 0; k < 4; ++k) {
      counts[k] = sample_counts(circuits[k], shots, device.noise, derive_seed(seed, stream++));
    }
    r.num_circuits += 4;
    for (std::size_t i = 0; i < cls.size(); ++i) {
      std::vector<int> bits{static_cast<int>(2 * i), static_cast<int>(2 * i + 1)};
      double zz = expectation_parity(counts[0], bits);
      double zx = expectation_parity(counts[1], bits);
      double xz = expectation_parity(counts[2], bits);
      double xx = expectation_parity(counts[3], bits);
      double s = std::abs(zz + zx + xz - xx);
      r.per_edge_S[cls[i]] = s;
      if (s > 2.0) r.violating_subgraph.push_back(cls[i]);
    }
  }
  std::sort(r.violating_subgraph.begin(), r.violating_subgraph.end());
  Graph viol = device.coupling.with_edges(r.violating_subgraph);
  r.lccs = largest_connected_component(viol).size;
  r.connection_fraction =
      r.num_qubits > 0 ? static_cast<double>(r.lccs) / r.num_qubits : 0.0;
  return r;
}

double bseq_score(int lccs, double fraction, int base_lccs, double base_fraction) {
  if (base_lccs <= 0 || base_fraction <= 0.0) {
    throw std::invalid_argument("bseq_score: baseline lccs and fraction must be positive");
  }
  return 87.5 * lccs / base_lccs + 12.5 * fraction / base_fraction;
}

double bseq_score(const BseqResult& result, const BseqResult& baseline) {
  return bseq_score(result.lccs, result.connection_fraction, baseline.lccs,
                    baseline.connection_fraction);
}

// ---------------------------------------------------------------- EPLG

json RbFit::to_json() const {
  return {{"a", a}, {"alpha", alpha}, {"b", b}, {"residual", residual},
          {"alpha_stderr", alpha_stderr}, {"converged", converged}};
}

double process_fidelity(double alpha, int num_qubits) {
  double d2 = std::pow(4.0, num_qubits);
  return ((d2 - 1.0) * alpha + 1.0) / d2;
}

RbFit fit_rb_decay(const std::vector<std::pair<double, double>>& points, int num_qubits) {
  std::vector<double> xs;
  for (const auto& p : points) xs.push_back(p.first);
  std::sort(xs.begin(), xs.end());
  if (std::unique(xs.begin(), xs.end()) - xs.begin() < 3) {
    throw std::invalid_argument("fit_rb_decay: need at least 3 distinct lengths");
  }
  RbFit f;
  f.b = std::pow(0.5, num_qubits);

  // log-linear start on points above the offset
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int k = 0;
  for (const auto& [x, y] : points) {
    if (y - f.b <= 1e-12) continue;
    double ly = std::log(y - f.b);
    sx += x; sy += ly; sxx += x * x; sxy += x * ly;
    ++k;
  }
  double denom = k * sxx - sx * sx;
  if (k >= 2 && std::abs(denom) > 1e-12) {
    double slope = (k * sxy - sx * sy) / denom;
    f.alpha = std::clamp(std::exp(slope), 1e-9, 1.0);
    f.a = std::exp((sy - slope * sx) / k);
  } else {
    f.alpha = 0.5;
    f.a = 1.0 - f.b;
    f.converged = false;
  }

  auto sse = [&](double a, double alpha) {
    double s = 0;
    for (const auto& [x, y] : points) {
      double r = a * std::pow(alpha, x) + f.b - y;
      s += r * r;
    }
    return s;
  };

  // Gauss-Newton on (a, alpha) with step halving and alpha kept in (0, 1]
  bool done = false;
  double cur = sse(f.a, f.alpha);
  double jtj[2][2] = {{0, 0}, {0, 0}};
  for (int it = 0; it < 200 && !done; ++it) {
    double g0 = 0, g1 = 0;
    jtj[0][0] = jtj[0][1] = jtj[1][1] = 0;
    for (const auto& [x, y] : points) {
      double pw = std::pow(f.alpha, x);
      double j0 = pw;
      double j1 = x == 0 ? 0.0 : f.a * x * std::pow(f.alpha, x - 1);
      double r = f.a * pw + f.b - y;
      jtj[0][0] += j0 * j0; jtj[0][1] += j0 * j1; jtj[1][1] += j1 * j1;
      g0 += j0 * r; g1 += j1 * r;
    }
    double det = jtj[0][0] * jtj[1][1] - jtj[0][1] * jtj[0][1];
    if (std::abs(det) < 1e-300) break;
    double da = -(jtj[1][1] * g0 - jtj[0][1] * g1) / det;
    double dl = -(jtj[0][0] * g1 - jtj[0][1] * g0) / det;
    double step = 1.0;
    bool improved = false;
    for (int h = 0; h < 40; ++h, step *= 0.5) {
      double na = f.a + step * da;
      double nl = std::clamp(f.alpha + step * dl, 1e-9, 1.0);
      double s = sse(na, nl);
      if (s <= cur) {
        double change = std::abs(nl - f.alpha) + std::abs(na - f.a);
        f.a = na;
        f.alpha = nl;
        improved = s < cur;
        cur = s;
        if (change < 1e-14) done = true;
        break;
      }
    }
    if (!improved) done = true;
  }
  if (!done) f.converged = false;
  f.residual = cur;
  int n = static_cast<int>(points.size());
  double det = jtj[0][0] * jtj[1][1] - jtj[0][1] * jtj[0][1];
  if (n > 2 && det > 0) f.alpha_stderr = std::sqrt(cur / (n - 2) * jtj[0][0] / det);
  return f;
}

double eplg_from_layer_fidelity(double layer_fidelity, int n_2q) {
  if (n_2q < 1) throw std::invalid_argument("eplg: n_2q must be >= 1");
  return 1.0 - std::pow(std::clamp(layer_fidelity, 0.0, 1.0), 1.0 / n_2q);
}

json EplgResult::to_json() const {
  json els = json::array();
  for (const auto& e : elements) {
    json decay = json::array();
    for (const auto& [l, y] : e.decay) decay.push_back({l, y});
    els.push_back({{"sublayer", e.sublayer},
                   {"positions", e.positions},
                   {"decay", decay},
                   {"fit", e.fit.to_json()},
                   {"fidelity", e.fidelity}});
  }
  json by_len = json::object();
  for (const auto& [l, v] : eplg_by_length) by_len[std::to_string(l)] = v;
  return {{"chain", chain},       {"elements", els},
          {"layer_fidelity", layer_fidelity}, {"n_2q", n_2q},
          {"eplg", eplg},         {"eplg_by_length", by_len}};
}

namespace {

// Gate pairs and idle qubits of the two disjoint sublayers of a line.
std::vector<EplgElement> drb_elements(int n) {
  std::vector<EplgElement> out;
  for (int m = 0; m < 2; ++m) {
    if (m == 1) out.push_back({1, {0}, {}, {}, 1.0});
    int i = m;
    for (; i + 1 < n; i += 2) out.push_back({m, {i, i + 1}, {}, {}, 1.0});
    if (i < n) out.push_back({m, {i}, {}, {}, 1.0});
  }
  return out;
}

Circuit drb_circuit(const DeviceModel& device, const std::vector<int>& chain,
                    const std::vector<const EplgElement*>& elements, int depth,
                    GateKind gate2, Rng& rng) {
  const auto& g1 = CliffordGroup::one_qubit();
  const auto& g2 = CliffordGroup::two_qubit();
  Circuit c(device.num_qubits());
  std::vector<int> active;
  std::vector<CliffordImage> images;
  std::vector<std::vector<int>> phys;
  for (const auto* e : elements) {
    std::vector<int> q;
    for (int p : e->positions) q.push_back(chain[p]);
    active.insert(active.end(), q.begin(), q.end());
    phys.push_back(q);
    images.emplace_back(static_cast<int>(q.size()));
  }
  auto put = [&](std::size_t i, const std::vector<GateOp>& local) {
    images[i].apply(local);
    for (auto& op : remap_ops(local, phys[i])) c.append(std::move(op));
  };
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const auto& grp = phys[i].size() == 2 ? g2 : g1;
    put(i, grp.word(grp.sample(rng)));
  }
  c.barrier(active);
  for (int l = 0; l < depth; ++l) {
    for (std::size_t i = 0; i < elements.size(); ++i) {
      for (int j = 0; j < static_cast<int>(phys[i].size()); ++j) {
        put(i, remap_ops(g1.word(g1.sample(rng)), {j}));
      }
      if (phys[i].size() == 2) put(i, {GateOp{gate2, {0, 1}, {}}});
    }
    c.barrier(active);
  }
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const auto& grp = phys[i].size() == 2 ? g2 : g1;
    put(i, grp.word(grp.inverse(grp.index_of(images[i]))));
  }
  for (std::size_t p = 0; p < chain.size(); ++p) c.measure(chain[p], static_cast<int>(p));
  return c;
}

void check_eplg_args(int n_chain, const std::vector<int>& lengths, int num_samples) {
  if (n_chain < 2) throw std::invalid_argument("eplg: chain needs at least 2 qubits");
  if (lengths.empty() || !std::is_sorted(lengths.begin(), lengths.end()) ||
      lengths.front() < 0 ||
      std::adjacent_find(lengths.begin(), lengths.end()) != lengths.end()) {
    throw std::invalid_argument("eplg: lengths must be non-empty, non-negative and ascending");
  }
  if (num_samples < 1) throw std::invalid_argument("eplg: num_samples must be >= 1");
}

std::uint64_t drb_seed(std::uint64_t seed, int sublayer, int length, int sample) {
  return derive_seed(derive_seed(derive_seed(seed, sublayer), length), sample);
}

}  // namespace

void eplg_circuits(const DeviceModel& device, int n_chain, const std::vector<int>& lengths,
                   int num_samples, std::uint64_t seed,
                   const std::function<void(const Circuit&)>& visit) {
  check_eplg_args(n_chain, lengths, num_samples);
  std::vector<int> chain = sample_random_chain(device.coupling, n_chain, derive_seed(seed, "chain"));
  std::vector<EplgElement> elements = drb_elements(n_chain);
  GateKind gate2 = native_two_qubit_gate(device);
  for (int m = 0; m < 2; ++m) {
    std::vector<const EplgElement*> els;
    for (const auto& e : elements) {
      if (e.sublayer == m) els.push_back(&e);
    }
    for (int l : lengths) {
      for (int s = 0; s < num_samples; ++s) {
        Rng rng(drb_seed(seed, m, l, s));
        visit(drb_circuit(device, chain, els, l, gate2, rng));
      }
    }
  }
}

EplgResult eplg_run(const DeviceModel& device, int n_chain, const std::vector<int>& lengths,
                    int num_samples, std::int64_t shots, std::uint64_t seed) {
  check_eplg_args(n_chain, lengths, num_samples);
  if (shots < 1) throw std::invalid_argument("eplg: shots must be >= 1");
  EplgResult r;
  r.chain = sample_random_chain(device.coupling, n_chain, derive_seed(seed, "chain"));
  r.elements = drb_elements(n_chain);
  GateKind gate2 = native_two_qubit_gate(device);

  std::vector<std::vector<double>> survival(r.elements.size(),
                                            std::vector<double>(lengths.size(), 0.0));
  for (int m = 0; m < 2; ++m) {
    std::vector<const EplgElement*> els;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < r.elements.size(); ++i) {
      if (r.elements[i].sublayer == m) {
        els.push_back(&r.elements[i]);
        idx.push_back(i);
      }
    }
    for (std::size_t li = 0; li < lengths.size(); ++li) {
      for (int s = 0; s < num_samples; ++s) {
        std::uint64_t circ_seed = drb_seed(seed, m, lengths[li], s);
        Rng rng(circ_seed);
        Circuit c = drb_circuit(device, r.chain, els, lengths[li], gate2, rng);
        CountsMap counts = sample_counts(c, shots, device.noise, derive_seed(circ_seed, "exec"));
        for (std::size_t k = 0; k < els.size(); ++k) {
          std::int64_t ok = 0;
          for (const auto& [bits, n] : counts.counts) {
            bool zero = true;
            for (int p : els[k]->positions) zero = zero && bits[p] == '0';
            if (zero) ok += n;
          }
          survival[idx[k]][li] += static_cast<double>(ok) / counts.shots / num_samples;
        }
      }
    }
  }

  for (std::size_t i = 0; i < r.elements.size(); ++i) {
    auto& e = r.elements[i];
    for (std::size_t li = 0; li < lengths.size(); ++li) {
      e.decay.emplace_back(lengths[li], survival[i][li]);
    }
    int m = static_cast<int>(e.positions.size());
    e.fit = fit_rb_decay(e.decay, m);
    e.fidelity = std::clamp(process_fidelity(e.fit.alpha, m), 0.0, 1.0);
  }
  r.n_2q = n_chain - 1;
  auto [lf, eplg] = eplg_prefix(r, n_chain);
  r.layer_fidelity = lf;
  r.eplg = eplg;
  for (int l : kEplgGrid) {
    if (l <= n_chain) r.eplg_by_length[l] = eplg_prefix(r, l).second;
  }
  return r;
}

std::pair<double, double> eplg_prefix(const EplgResult& result, int prefix) {
  if (prefix < 2 || prefix > static_cast<int>(result.chain.size())) {
    throw std::invalid_argument("eplg_prefix: prefix outside the chain");
  }
  double lf = 1.0;
  for (const auto& e : result.elements) {
    bool inside = std::all_of(e.positions.begin(), e.positions.end(),
                              [&](int p) { return p < prefix; });
    if (inside) lf *= e.fidelity;
  }
  return {lf, eplg_from_layer_fidelity(lf, prefix - 1)};
}

double eplg_score(const std::map<int, double>& eplg, const std::map<int, double>& baseline,
                  const std::vector<int>& grid) {
  double total = std::accumulate(grid.begin(), grid.end(), 0.0);
  double covered = 0.0, inv = 0.0;
  for (int l : grid) {
    auto base = baseline.find(l);
    if (base == baseline.end() || base->second <= 0.0) {
      throw std::invalid_argument("eplg_score: baseline lacks a positive value at length " +
                                  std::to_string(l));
    }
    auto it = eplg.find(l);
    if (it == eplg.end()) continue;
    if (it->second <= 0.0) throw std::invalid_argument("eplg_score: EPLG must be positive");
    double w = l / total;
    double sub = 100.0 * base->second / it->second;
    covered += w;
    inv += w / sub;
  }
  return covered > 0.0 ? covered * covered / inv : 0.0;
}

// ---------------------------------------------------------------- Mirror

json MirrorResult::to_json() const {
  return {{"width", width},           {"num_layers", num_layers},
          {"supported", supported},   {"matches", matches},
          {"shots", shots},           {"success_prob", success_prob},
          {"polarization", polarization}, {"pass", pass}};
}

MirrorCircuitSpec generate_mirror_spec(const Graph& g, int width, int num_layers,
                                       double two_qubit_gate_prob, std::uint64_t seed) {
  if (width < 1 || width > g.num_vertices()) {
    throw std::invalid_argument("mirror: width outside the device");
  }
  const auto& g1 = CliffordGroup::one_qubit();
  Rng rng(seed);
  MirrorCircuitSpec spec;
  spec.width = width;
  spec.num_layers = num_layers;
  spec.two_qubit_gate_prob = two_qubit_gate_prob;
  spec.seed = seed;
  spec.qubits = sample_connected_region(g, width, rng);
  Graph local = g.induced(spec.qubits);

  for (int q = 0; q < width; ++q) {
    for (auto& op : remap_ops(g1.word(g1.sample(rng)), {q})) spec.prep.push_back(op);
  }
  static constexpr GateKind kPauli[] = {GateKind::X, GateKind::Y, GateKind::Z};
  for (int l = 0; l < num_layers; ++l) {
    std::vector<GateOp> layer;
    for (int q = 0; q < width; ++q) {
      auto p = uniform_below(rng, 4);
      if (p > 0) layer.push_back(op1(kPauli[p - 1], q));
    }
    for (int q = 0; q < width; ++q) {
      for (auto& op : remap_ops(g1.word(g1.sample(rng)), {q})) layer.push_back(op);
    }
    if (uniform01(rng) < two_qubit_gate_prob && !local.edges().empty()) {
      std::vector<Edge> edges = local.edges();
      std::shuffle(edges.begin(), edges.end(), rng);
      std::vector<bool> used(width, false);
      for (auto [a, b] : edges) {
        if (used[a] || used[b]) continue;
        used[a] = used[b] = true;
        if (uniform_below(rng, 2)) std::swap(a, b);
        layer.push_back(GateOp{GateKind::CX, {a, b}, {}});
      }
    }
    spec.layers.push_back(std::move(layer));
  }
  spec.central = PauliString(width);
  for (int q = 0; q < width; ++q) spec.central.set(q, "IXYZ"[uniform_below(rng, 4)]);
  return spec;
}

double polarization(double success_prob, int width) {
  double base = std::pow(0.5, width);
  return std::max(0.0, (success_prob - base) / (1.0 - base));
}

MirrorResult mirror_run(const DeviceModel& device, int width, int num_layers,
                        double two_qubit_gate_prob, int num_circuits, std::int64_t shots,
                        std::uint64_t seed) {
  MirrorResult r;
  r.width = width;
  r.num_layers = num_layers;
  if (width > device.num_qubits()) {
    r.supported = false;
    return r;
  }
  for (int i = 0; i < num_circuits; ++i) {
    std::uint64_t s = derive_seed(seed, i);
    MirrorCircuitSpec spec =
        generate_mirror_spec(device.coupling, width, num_layers, two_qubit_gate_prob, s);
    Circuit c = spec.to_circuit(device.num_qubits());
    CountsMap counts = sample_counts(c, shots, device.noise, derive_seed(s, "exec"));
    r.matches += counts.get(expected_mirror_bitstring(spec));
    r.shots += counts.shots;
  }
  r.success_prob = r.shots > 0 ? static_cast<double>(r.matches) / r.shots : 0.0;
  r.polarization = polarization(r.success_prob, width);
  r.pass = r.success_prob > std::exp(-1.0);
  return r;
}

double mc_score(const std::vector<std::optional<double>>& panel) {
  if (panel.size() != kMirrorPanel.size()) {
    throw std::invalid_argument("mc_score: expected one entry per panel shape");
  }
  double total = 0.0, acc = 0.0;
  for (std::size_t i = 0; i < panel.size(); ++i) {
    total += kMirrorPanel[i].first;
    if (panel[i]) acc += kMirrorPanel[i].first * *panel[i];
  }
  return acc / total;
}

// ---------------------------------------------------------------- CLOPS

ClopsMode clops_mode_from_string(const std::string& name) {
  if (name == "instantiated") return ClopsMode::Instantiated;
  if (name == "parameterized") return ClopsMode::Parameterized;
  if (name == "twirled") return ClopsMode::Twirled;
  throw std::invalid_argument("unknown CLOPS mode: " + name);
}

std::string to_string(ClopsMode mode) {
  switch (mode) {
    case ClopsMode::Instantiated: return "instantiated";
    case ClopsMode::Parameterized: return "parameterized";
    case ClopsMode::Twirled: return "twirled";
  }
  return "";
}

json ClopsResult::to_json() const {
  json j = {{"num_layers", num_layers}, {"num_circuits", num_circuits}, {"shots", shots}};
  j["t_total"] = t_total ? json(*t_total) : json(nullptr);
  j["clops"] = clops ? json(*clops) : json(nullptr);
  j["steady_state_clops"] = steady_state_clops ? json(*steady_state_clops) : json(nullptr);
  return j;
}

double clops_value(int num_layers, int num_circuits, std::int64_t shots, double t_total) {
  if (t_total <= 0.0) throw std::invalid_argument("clops: t_total must be positive");
  return static_cast<double>(num_layers) * num_circuits * static_cast<double>(shots) / t_total;
}

Circuit clops_circuit(const std::vector<int>& chain, int device_qubits, int num_layers,
                      const std::string& two_qubit_gate, std::uint64_t seed) {
  auto kind = gate_kind_from_name(two_qubit_gate);
  if (!kind || gate_info(*kind).arity != 2) {
    throw std::invalid_argument("clops: unsupported two-qubit gate " + two_qubit_gate);
  }
  Rng rng(seed);
  Circuit c(device_qubits);
  int n = static_cast<int>(chain.size());
  for (int l = 0; l < num_layers; ++l) {
    for (int i = l % 2; i + 1 < n; i += 2) {
      std::vector<double> params;
      if (gate_info(*kind).num_params > 0) params.push_back(M_PI / 2);
      c.append(GateOp{*kind, {chain[i], chain[i + 1]}, params});
    }
    for (int q : chain) {
      c.rz(q, 2 * M_PI * uniform01(rng));
      c.ry(q, 2 * M_PI * uniform01(rng));
    }
    c.barrier(chain);
  }
  for (int i = 0; i < n; ++i) c.measure(chain[i], i);
  return c;
}

ClopsResult clops_run(const DeviceModel& device, int num_qubits, int num_layers,
                      int num_circuits, std::int64_t shots, ClopsMode mode,
                      const std::string& two_qubit_gate, std::uint64_t seed) {
  if (num_layers < 1 || num_circuits < 1 || shots < 1) {
    throw std::invalid_argument("clops: layers, circuits and shots must be >= 1");
  }
  ClopsResult r;
  r.num_layers = num_layers;
  r.num_circuits = num_circuits;
  r.shots = shots;
  std::vector<int> chain = sample_random_chain(device.coupling, num_qubits, derive_seed(seed, "chain"));
  if (!device.timing) return r;
  const TimingModel& t = *device.timing;
  // Random angles never change the critical path, so one template fixes the
  // per-circuit duration for every instance.
  Circuit templ = clops_circuit(chain, device.num_qubits(), num_layers, two_qubit_gate,
                                derive_seed(seed, "angles"));
  double run = t.circuit_duration(templ) * static_cast<double>(shots) + t.overhead_seconds;
  double total = num_circuits * run;
  total += mode == ClopsMode::Instantiated ? num_circuits * t.compile_seconds : t.compile_seconds;
  r.t_total = total;
  r.clops = clops_value(num_layers, num_circuits, shots, total);
  double first = run + t.compile_seconds;
  if (num_circuits > 1 && total - first > 0.0) {
    r.steady_state_clops = clops_value(num_layers, num_circuits - 1, shots, total - first);
  }
  return r;
}

}  // namespace qbench
