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
#include "qbench/circuit/device.hpp"

#include <algorithm>
#include <deque>
#include <fstream>

#include "qbench/common/error.hpp"
#include "qbench/common/hash.hpp"

namespace qbench {

double NoiseProfile::two_qubit_error(int a, int b) const {
  auto it = p2_overrides.find(make_edge(a, b));
  return it == p2_overrides.end() ? p2 : it->second;
}

bool NoiseProfile::noiseless() const {
  if (p1 > 0 || p2 > 0 || readout_eps > 0) return false;
  return std::all_of(p2_overrides.begin(), p2_overrides.end(),
                     [](const auto& kv) { return kv.second <= 0; });
}

void NoiseProfile::validate() const {
  auto ok = [](double p) { return p >= 0.0 && p <= 1.0; };
  bool good = ok(p1) && ok(p2) && ok(readout_eps);
  for (const auto& [e, p] : p2_overrides) good = good && ok(p);
  if (!good) throw Error(ErrorKind::Validation, "noise probabilities must lie in [0, 1]");
}

NoiseProfile NoiseProfile::restricted(const std::vector<int>& to_physical) const {
  NoiseProfile out{p1, p2, readout_eps, {}};
  if (p2_overrides.empty()) return out;
  for (std::size_t i = 0; i < to_physical.size(); ++i) {
    for (std::size_t j = i + 1; j < to_physical.size(); ++j) {
      auto it = p2_overrides.find(make_edge(to_physical[i], to_physical[j]));
      if (it != p2_overrides.end()) {
        out.p2_overrides[make_edge(static_cast<int>(i), static_cast<int>(j))] = it->second;
      }
    }
  }
  return out;
}

json NoiseProfile::to_json() const {
  json ov = json::array();
  for (const auto& [e, p] : p2_overrides) ov.push_back({{"edge", {e.first, e.second}}, {"p2", p}});
  return {{"p1", p1}, {"p2", p2}, {"readout_eps", readout_eps}, {"overrides", ov}};
}

NoiseProfile NoiseProfile::from_json(const json& j) {
  NoiseProfile n;
  n.p1 = j.value("p1", 0.0);
  n.p2 = j.value("p2", 0.0);
  n.readout_eps = j.value("readout_eps", 0.0);
  if (j.contains("overrides")) {
    for (const auto& o : j.at("overrides")) {
      auto e = o.at("edge").get<std::vector<int>>();
      if (e.size() != 2) throw Error(ErrorKind::Validation, "override edge needs two qubits");
      n.p2_overrides[make_edge(e[0], e[1])] = o.at("p2").get<double>();
    }
  }
  n.validate();
  return n;
}

double TimingModel::duration(const GateOp& op) const {
  if (op.kind == GateKind::Barrier) return 0.0;
  auto it = gate_seconds.find(std::string(op.name()));
  if (it != gate_seconds.end()) return it->second;
  // unlisted gates fall back to the generic one- or two-qubit entry
  it = gate_seconds.find(op.is_two_qubit() ? "2q" : "1q");
  return it == gate_seconds.end() ? 0.0 : it->second;
}

double TimingModel::circuit_duration(const Circuit& c) const {
  std::vector<double> t(c.num_qubits(), 0.0);
  for (const auto& op : c.ops()) {
    double start = 0.0;
    for (int q : op.qubits) start = std::max(start, t[q]);
    double end = start + duration(op);
    for (int q : op.qubits) t[q] = end;
  }
  return t.empty() ? 0.0 : *std::max_element(t.begin(), t.end());
}

json TimingModel::to_json() const {
  json ns = json::object();
  for (const auto& [g, s] : gate_seconds) ns[g] = s * 1e9;
  return {{"gate_ns", ns}, {"overhead_us", overhead_seconds * 1e6},
          {"compile_us", compile_seconds * 1e6}};
}

TimingModel TimingModel::from_json(const json& j) {
  TimingModel t;
  for (const auto& [g, ns] : j.at("gate_ns").items()) {
    double v = ns.get<double>();
    if (v < 0) throw Error(ErrorKind::Validation, "negative gate duration");
    t.gate_seconds[g] = v * 1e-9;
  }
  t.overhead_seconds = j.value("overhead_us", 0.0) * 1e-6;
  t.compile_seconds = j.value("compile_us", 0.0) * 1e-6;
  if (t.overhead_seconds < 0 || t.compile_seconds < 0) {
    throw Error(ErrorKind::Validation, "negative timing overhead");
  }
  return t;
}

bool DeviceModel::all_to_all() const {
  const auto n = static_cast<std::size_t>(num_qubits());
  return n > 1 && coupling.edges().size() == n * (n - 1) / 2;
}

std::string DeviceModel::fingerprint() const { return content_hash(to_json(), 16); }

json DeviceModel::to_json() const {
  json edges = json::array();
  for (const auto& [u, v] : coupling.edges()) edges.push_back({u, v});
  json j = {{"device_id", device_id},
            {"provider", provider},
            {"qubits", num_qubits()},
            {"edges", edges},
            {"noise", noise.to_json()},
            {"basis_gates", basis_gates}};
  if (!aliases.empty()) j["aliases"] = aliases;
  if (timing) j["timing"] = timing->to_json();
  return j;
}

DeviceModel DeviceModel::from_json(const json& j) {
  DeviceModel d;
  d.device_id = j.at("device_id").get<std::string>();
  d.provider = j.value("provider", std::string("local"));
  d.aliases = j.value("aliases", std::vector<std::string>{});
  int n = j.at("qubits").get<int>();
  std::vector<Edge> edges;
  if (j.contains("edges") && j.at("edges").is_string() &&
      j.at("edges").get<std::string>() == "all") {
    edges = make_all_to_all(n).edges();
  } else {
    for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  }
  d.coupling = Graph(n, std::move(edges));
  if (j.contains("noise")) d.noise = NoiseProfile::from_json(j.at("noise"));
  if (j.contains("timing") && !j.at("timing").is_null()) {
    d.timing = TimingModel::from_json(j.at("timing"));
  }
  for (const auto& g : j.value("basis_gates", std::vector<std::string>{})) {
    if (!gate_kind_from_name(g)) throw Error(ErrorKind::Validation, "unknown basis gate " + g);
    d.basis_gates.insert(g);
  }
  return d;
}

DeviceModel DeviceModel::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw io_error("cannot open device file " + file.string());
  try {
    return from_json(json::parse(in));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Validation, file.string() + ": " + e.what());
  }
}

DeviceRegistry DeviceRegistry::load_directory(const std::filesystem::path& dir) {
  DeviceRegistry reg;
  if (!std::filesystem::is_directory(dir)) throw io_error("device registry not found: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) reg.add(DeviceModel::load(f));
  return reg;
}

void DeviceRegistry::add(DeviceModel device) {
  std::string id = device.device_id;
  for (const auto& a : device.aliases) alias_[a] = id;
  devices_[id] = std::move(device);
}

const DeviceModel& DeviceRegistry::get(const std::string& name, const std::string& provider) const {
  auto it = devices_.find(name);
  if (it == devices_.end()) {
    auto a = alias_.find(name);
    if (a != alias_.end()) it = devices_.find(a->second);
  }
  if (it == devices_.end() || (!provider.empty() && it->second.provider != provider)) {
    throw Error(ErrorKind::NotFound, "unknown device '" + name +
                                         (provider.empty() ? "" : "' for provider '" + provider) + "'");
  }
  return it->second;
}

bool DeviceRegistry::contains(const std::string& name) const {
  return devices_.count(name) > 0 || alias_.count(name) > 0;
}

std::vector<std::string> DeviceRegistry::ids() const {
  std::vector<std::string> out;
  for (const auto& [id, d] : devices_) out.push_back(id);
  return out;
}

std::vector<int> sample_random_chain(const Graph& g, int n, std::uint64_t seed, int max_restarts) {
  if (n < 2) throw std::invalid_argument("chain length must be at least 2");
  if (n > g.num_vertices()) {
    throw ChainNotFound("chain of " + std::to_string(n) + " qubits exceeds device size " +
                        std::to_string(g.num_vertices()));
  }
  if (g.edges().empty()) throw ChainNotFound("device has no couplings");
  Rng rng(seed);
  const auto& adj = g.adjacency();
  std::vector<char> used(g.num_vertices(), 0);
  for (int attempt = 0; attempt < max_restarts; ++attempt) {
    std::fill(used.begin(), used.end(), 0);
    const Edge& e = g.edges()[uniform_below(rng, g.edges().size())];
    std::deque<int> chain{e.first, e.second};
    used[e.first] = used[e.second] = 1;
    while (static_cast<int>(chain.size()) < n) {
      // candidates at both ends: (end, neighbour)
      std::vector<std::pair<bool, int>> cand;
      for (int v : adj[chain.back()]) {
        if (!used[v]) cand.emplace_back(true, v);
      }
      for (int v : adj[chain.front()]) {
        if (!used[v]) cand.emplace_back(false, v);
      }
      if (cand.empty()) break;
      auto [back, v] = cand[uniform_below(rng, cand.size())];
      used[v] = 1;
      if (back) chain.push_back(v); else chain.push_front(v);
    }
    if (static_cast<int>(chain.size()) == n) return {chain.begin(), chain.end()};
  }
  throw ChainNotFound("no simple chain of " + std::to_string(n) + " qubits found after " +
                      std::to_string(max_restarts) + " restarts");
}

std::vector<int> sample_connected_region(const Graph& g, int n, Rng& rng) {
  if (n > g.num_vertices()) throw Error(ErrorKind::Validation, "region larger than device");
  std::vector<int> order(g.num_vertices());
  for (int i = 0; i < g.num_vertices(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> best;
  for (int start : order) {
    std::vector<char> seen(g.num_vertices(), 0);
    std::vector<int> region{start};
    seen[start] = 1;
    std::vector<int> frontier;
    for (int v : g.adjacency()[start]) frontier.push_back(v);
    while (static_cast<int>(region.size()) < n && !frontier.empty()) {
      std::size_t k = uniform_below(rng, frontier.size());
      int v = frontier[k];
      frontier.erase(frontier.begin() + static_cast<long>(k));
      if (seen[v]) continue;
      seen[v] = 1;
      region.push_back(v);
      for (int w : g.adjacency()[v]) {
        if (!seen[w]) frontier.push_back(w);
      }
    }
    if (static_cast<int>(region.size()) == n) return region;
    if (region.size() > best.size()) best = region;
  }
  throw Error(ErrorKind::Execution, "no connected region of " + std::to_string(n) + " qubits");
}

}  // namespace qbench
