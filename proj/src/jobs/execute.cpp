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
#include "qbench/jobs/execute.hpp"

#include <fstream>
#include <functional>

#include "qbench/bench/app.hpp"
#include "qbench/bench/system.hpp"
#include "qbench/common/error.hpp"
#include "qbench/common/hash.hpp"

namespace qbench {

std::uint64_t job_seed(const std::string& job_id) {
  std::string h = sha256_hex(job_id);
  return std::stoull(h.substr(0, 16), nullptr, 16);
}

namespace {

int geti(const json& p, const char* key) { return p.at(key).get<int>(); }
std::int64_t shots_of(const json& p) { return p.at("shots").get<std::int64_t>(); }

std::optional<int> opt_int(const json& p, const char* key) {
  if (!p.contains(key) || p.at(key).is_null()) return std::nullopt;
  return p.at(key).get<int>();
}

// The instance seed comes from the params so that repeated runs share a
// graph; sampling stays tied to the job stream.
std::uint64_t lr_qaoa_seed(const json& p, std::uint64_t seed) {
  return derive_seed(seed, p.at("seed").get<std::uint64_t>());
}

}  // namespace

json execute_benchmark(const json& params, const DeviceModel& device, std::uint64_t seed) {
  const std::string type = benchmark_type(params.at("benchmark_name").get<std::string>());
  try {
    if (type == "bseq") {
      return bseq_run(device, shots_of(params), opt_int(params, "max_colors"), seed).to_json();
    }
    if (type == "eplg") {
      return eplg_run(device, geti(params, "num_qubits_in_chain"),
                      params.at("lengths").get<std::vector<int>>(), geti(params, "num_samples"),
                      shots_of(params), seed)
          .to_json();
    }
    if (type == "mirror") {
      return mirror_run(device, geti(params, "width"), geti(params, "num_layers"),
                        params.at("two_qubit_gate_prob").get<double>(),
                        geti(params, "num_circuits"), shots_of(params), seed)
          .to_json();
    }
    if (type == "clops") {
      return clops_run(device, geti(params, "num_qubits"), geti(params, "num_layers"),
                       geti(params, "num_circuits"), shots_of(params),
                       clops_mode_from_string(params.at("mode").get<std::string>()),
                       params.at("two_qubit_gate").get<std::string>(), seed)
          .to_json();
    }
    if (type == "qml_kernel") {
      return qml_kernel_run(device, geti(params, "num_qubits"), shots_of(params), seed).to_json();
    }
    if (type == "wit") {
      return wit_run(device, geti(params, "num_qubits"), shots_of(params), seed).to_json();
    }
    if (type == "lr_qaoa") {
      int n = geti(params, "num_qubits");
      auto layers = lr_qaoa_run(
          device, qaoa_graph_from_string(params.at("graph_type").get<std::string>()), n,
          params.at("qaoa_layers").get<std::vector<int>>(), params.at("delta_beta").get<double>(),
          params.at("delta_gamma").get<double>(), shots_of(params), geti(params, "trials"),
          geti(params, "num_random_trials"), params.at("confidence_level").get<double>(),
          lr_qaoa_seed(params, seed));
      json out = {{"num_qubits", n}, {"layers", json::array()}};
      for (const auto& l : layers) out["layers"].push_back(l.to_json());
      // headline: the first listed depth
      out["effective_ratio"] = layers.empty() ? json(nullptr) : json(layers.front().effective_ratio);
      out["supported"] = !layers.empty() && layers.front().supported;
      return out;
    }
    if (type == "qft") {
      return qft_run(device, geti(params, "min_qubits"), geti(params, "max_qubits"),
                     geti(params, "skip_qubits"), geti(params, "max_circuits"), shots_of(params),
                     geti(params, "method"), seed)
          .to_json();
    }
  } catch (const Error&) {
    throw;
  } catch (const ChainNotFound& e) {
    throw execution_error(std::string("chain not found: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw Error(ErrorKind::Validation, e.what());
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Validation, std::string("bad parameters: ") + e.what());
  }
  throw Error(ErrorKind::Validation, "no runner for benchmark type " + type);
}

BenchmarkRecord make_record(const json& params, json results, const DeviceModel& device,
                            std::uint64_t seed, std::string timestamp) {
  BenchmarkRecord r;
  r.timestamp = timestamp.empty() ? utc_now_iso() : std::move(timestamp);
  r.provider = device.provider;
  r.device = device.device_id;
  r.benchmark_name = params.at("benchmark_name").get<std::string>();
  r.params = params;
  r.results = std::move(results);
  // seeds above 2^53 do not survive a round trip through doubles elsewhere
  r.provenance = {{"seed", std::to_string(seed)},
                  {"engine_version", kEngineVersion},
                  {"device_fingerprint", device.fingerprint()}};
  r.seal();
  return r;
}

BenchmarkRecord run_benchmark(const json& params, const DeviceModel& device, std::uint64_t seed,
                              std::string timestamp) {
  return make_record(params, execute_benchmark(params, device, seed), device, seed,
                     std::move(timestamp));
}

// ---------------------------------------------------------------- cost

namespace {

const char* kind_name(PricingKind k) {
  switch (k) {
    case PricingKind::PerTaskShot: return "per_task_shot";
    case PricingKind::Hqc: return "hqc";
    case PricingKind::Runtime: return "runtime";
  }
  return "?";
}

}  // namespace

json PricingModel::to_json() const {
  json j = {{"model", kind_name(kind)}, {"currency", currency}};
  switch (kind) {
    case PricingKind::PerTaskShot:
      j["per_task"] = per_task;
      j["per_shot"] = per_shot;
      break;
    case PricingKind::Hqc:
      j["base"] = hqc_base;
      j["w1q"] = hqc_w1q;
      j["w2q"] = hqc_w2q;
      j["wmeas"] = hqc_wmeas;
      j["shot_divisor"] = hqc_shot_divisor;
      if (per_hqc) j["per_hqc"] = *per_hqc;
      break;
    case PricingKind::Runtime:
      j["per_second"] = per_second;
      break;
  }
  return j;
}

PricingModel PricingModel::from_json(const json& j) {
  std::vector<std::string> problems;
  PricingModel m;
  if (!j.is_object()) throw ValidationError({"pricing model must be a JSON object"});
  auto number = [&](const char* key, double& out, bool positive = false) {
    if (!j.contains(key)) {
      problems.push_back(std::string("/") + key + ": missing required property");
    } else if (!j.at(key).is_number()) {
      problems.push_back(std::string("/") + key + ": expected type number");
    } else {
      out = j.at(key).get<double>();
      if (out < 0 || (positive && out == 0)) {
        problems.push_back(std::string("/") + key + ": must be " +
                           (positive ? "positive" : "non-negative"));
      }
    }
  };
  std::string model = j.value("model", std::string());
  if (model == "per_task_shot") {
    m.kind = PricingKind::PerTaskShot;
    number("per_task", m.per_task);
    number("per_shot", m.per_shot);
  } else if (model == "hqc") {
    m.kind = PricingKind::Hqc;
    number("base", m.hqc_base);
    number("w1q", m.hqc_w1q);
    number("w2q", m.hqc_w2q);
    number("wmeas", m.hqc_wmeas);
    number("shot_divisor", m.hqc_shot_divisor, true);
    if (j.contains("per_hqc")) {
      double v = 0.0;
      number("per_hqc", v);
      m.per_hqc = v;
    }
  } else if (model == "runtime") {
    m.kind = PricingKind::Runtime;
    number("per_second", m.per_second);
  } else {
    problems.push_back("/model: must be one of per_task_shot, hqc, runtime");
  }
  m.currency = j.value("currency", std::string("USD"));
  if (!problems.empty()) throw ValidationError(problems);
  return m;
}

PricingModel PricingModel::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw io_error("cannot open pricing file " + file.string());
  try {
    return from_json(json::parse(in));
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Validation, file.string() + ": " + e.what());
  }
}

double hqc_credits(const PricingModel& p, const GateCounts& c, std::int64_t shots) {
  double weighted = p.hqc_w1q * static_cast<double>(c.one_qubit) +
                    p.hqc_w2q * static_cast<double>(c.two_qubit) +
                    p.hqc_wmeas * static_cast<double>(c.measure);
  return p.hqc_base + weighted * static_cast<double>(shots) / p.hqc_shot_divisor;
}

json CostEstimate::to_json() const {
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  return {{"tasks", tasks},         {"total_shots", total_shots}, {"n1q", n1q},
          {"n2q", n2q},             {"nmeas", nmeas},             {"hqc", opt(hqc)},
          {"cost", opt(cost)},      {"currency", currency},
          {"runtime_seconds", opt(runtime_seconds)}};
}

namespace {

// Calls \p visit(circuit, shots) for every task of the benchmark.
void for_each_task(const json& p, const DeviceModel& device, std::uint64_t seed,
                   const std::function<void(const Circuit&, std::int64_t)>& visit) {
  const std::string type = benchmark_type(p.at("benchmark_name").get<std::string>());
  const std::int64_t shots = shots_of(p);
  const int nq = device.num_qubits();
  if (type == "bseq") {
    EdgeColoring coloring = bseq_coloring(device, opt_int(p, "max_colors"));
    for (const auto& cls : coloring.classes) {
      for (const Circuit& c : bseq_circuits(nq, cls)) visit(c, shots);
    }
  } else if (type == "eplg") {
    eplg_circuits(device, geti(p, "num_qubits_in_chain"), p.at("lengths").get<std::vector<int>>(),
                  geti(p, "num_samples"), seed, [&](const Circuit& c) { visit(c, shots); });
  } else if (type == "mirror") {
    int width = geti(p, "width");
    if (width > nq) return;
    for (int i = 0; i < geti(p, "num_circuits"); ++i) {
      MirrorCircuitSpec spec = generate_mirror_spec(device.coupling, width, geti(p, "num_layers"),
                                                    p.at("two_qubit_gate_prob").get<double>(),
                                                    derive_seed(seed, i));
      visit(spec.to_circuit(nq), shots);
    }
  } else if (type == "clops") {
    std::vector<int> chain =
        sample_random_chain(device.coupling, geti(p, "num_qubits"), derive_seed(seed, "chain"));
    Circuit templ = clops_circuit(chain, nq, geti(p, "num_layers"),
                                  p.at("two_qubit_gate").get<std::string>(),
                                  derive_seed(seed, "angles"));
    for (int i = 0; i < geti(p, "num_circuits"); ++i) visit(templ, shots);
  } else if (type == "qml_kernel") {
    int n = geti(p, "num_qubits");
    if (n > nq) return;
    visit(build_qml_overlap(sample_qml_angles(n, derive_seed(seed, "angles"))), shots);
  } else if (type == "wit") {
    if (geti(p, "num_qubits") > nq) return;
    visit(build_wit_circuit(geti(p, "num_qubits")), shots);
  } else if (type == "lr_qaoa") {
    int n = geti(p, "num_qubits");
    if (n > nq) return;
    auto inst = lr_qaoa_instance(device,
                                 qaoa_graph_from_string(p.at("graph_type").get<std::string>()), n,
                                 lr_qaoa_seed(p, seed))
                    .first;
    for (int depth : p.at("qaoa_layers").get<std::vector<int>>()) {
      Circuit c = build_lr_qaoa_circuit(
          inst, linear_ramp(depth, p.at("delta_beta").get<double>(), p.at("delta_gamma").get<double>()));
      for (int t = 0; t < geti(p, "trials"); ++t) visit(c, shots);
    }
  } else if (type == "qft") {
    int method = geti(p, "method");
    for (int n = geti(p, "min_qubits"); n <= geti(p, "max_qubits"); n += geti(p, "skip_qubits")) {
      if (n > nq) break;
      // gate counts do not depend on the encoded input
      Circuit c = build_qft_benchmark_circuit(n, 0, method);
      std::int64_t inputs = std::min<std::int64_t>(geti(p, "max_circuits"),
                                                   n < 62 ? (std::int64_t{1} << n) : INT64_MAX);
      for (std::int64_t i = 0; i < inputs; ++i) visit(c, shots);
    }
  } else {
    throw Error(ErrorKind::Validation, "no estimator for benchmark type " + type);
  }
}

}  // namespace

CostEstimate estimate_cost(const json& params, const DeviceModel& device, std::uint64_t seed,
                           const std::optional<PricingModel>& pricing) {
  CostEstimate e;
  double hqc = 0.0, runtime = 0.0;
  const TimingModel* timing = device.timing ? &*device.timing : nullptr;
  try {
    for_each_task(params, device, seed, [&](const Circuit& c, std::int64_t shots) {
      GateCounts g = c.counts();
      ++e.tasks;
      e.total_shots += shots;
      e.n1q += g.one_qubit;
      e.n2q += g.two_qubit;
      e.nmeas += g.measure;
      if (pricing && pricing->kind == PricingKind::Hqc) hqc += hqc_credits(*pricing, g, shots);
      if (timing) {
        runtime += timing->overhead_seconds + timing->compile_seconds +
                   timing->circuit_duration(c) * static_cast<double>(shots);
      }
    });
  } catch (const ChainNotFound& err) {
    throw execution_error(std::string("chain not found: ") + err.what());
  } catch (const std::invalid_argument& err) {
    throw Error(ErrorKind::Validation, err.what());
  }
  if (timing) e.runtime_seconds = runtime;
  if (pricing) {
    e.currency = pricing->currency;
    switch (pricing->kind) {
      case PricingKind::PerTaskShot:
        e.cost = pricing->per_task * static_cast<double>(e.tasks) +
                 pricing->per_shot * static_cast<double>(e.total_shots);
        break;
      case PricingKind::Hqc:
        e.hqc = hqc;
        if (pricing->per_hqc) e.cost = hqc * *pricing->per_hqc;
        break;
      case PricingKind::Runtime:
        if (!e.runtime_seconds) {
          throw Error(ErrorKind::Validation, "runtime pricing needs a device timing model");
        }
        e.cost = *e.runtime_seconds * pricing->per_second;
        break;
    }
  }
  return e;
}

}  // namespace qbench
