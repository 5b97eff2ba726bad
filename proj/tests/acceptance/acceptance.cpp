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
// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit when any
// criterion fails. An optional argument selects a single criterion.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "oracle.hpp"
#include "qbench/analytics/analytics.hpp"
#include "qbench/bench/app.hpp"
#include "qbench/bench/system.hpp"
#include "qbench/cli/cli.hpp"
#include "qbench/common/hash.hpp"
#include "qbench/dataset/record.hpp"
#include "qbench/dataset/schema.hpp"
#include "qbench/jobs/execute.hpp"
#include "qbench/jobs/runtime.hpp"
#include "qbench/scoring/score.hpp"
#include "qbench/sim/counts.hpp"
#include "qbench/sim/mirror.hpp"
#include "qbench/sim/sampler.hpp"
#include "qbench/sim/statevector.hpp"

namespace qbench {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

const fs::path kData = QBENCH_DATA_DIR;

class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  void near(const std::string& what, double got, double want, double tol) {
    std::ostringstream s;
    s << what << " = " << std::setprecision(8) << got << ", want " << want << " +- " << tol;
    expect(std::isfinite(got) && std::abs(got - want) <= tol, s.str());
  }
  void within(const std::string& what, double got, double lo, double hi) {
    std::ostringstream s;
    s << what << " = " << std::setprecision(6) << got << ", want in [" << lo << ", " << hi << "]";
    expect(got >= lo && got <= hi, s.str());
  }
  const std::vector<std::string>& failures() const { return failures_; }

 private:
  std::vector<std::string> failures_;
};

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("qbench-accept-" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

const SchemaRegistry& schemas() {
  static const SchemaRegistry reg = SchemaRegistry::load_directory(kData / "schemas");
  return reg;
}

const DeviceRegistry& devices() {
  static const DeviceRegistry reg = DeviceRegistry::load_directory(kData / "devices");
  return reg;
}

DeviceModel noiseless(Graph g, const std::string& id) {
  DeviceModel d;
  d.device_id = id;
  d.coupling = std::move(g);
  return d;
}

Circuit without_measurements(const Circuit& c) {
  Circuit u(c.num_qubits());
  for (const auto& op : c.ops()) {
    if (op.kind != GateKind::Measure) u.append(op);
  }
  return u;
}

struct CliRun {
  int code = -1;
  std::string out, err;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliEnvironment env;
  env.getenv = [](const std::string&) { return std::optional<std::string>(); };
  env.cwd = fs::temp_directory_path();
  CliRun r;
  r.code = run_cli(args, out, err, env);
  r.out = out.str();
  r.err = err.str();
  return r;
}

// ---------------------------------------------------------------- 1

void worked_example(Checks& c) {
  const std::vector<int> widths = {10, 20};
  auto w = benchmark_weights({{"BenchA", 56.0}, {"BenchB", effective_width(widths)}});
  double bs_b = baseline_normalize(width_aggregate({0.88, 0.70}, width_weights(widths)),
                                   width_aggregate({0.82, 0.76}, width_weights(widths)),
                                   Direction::HigherBetter);
  c.near("BS_BenchB", bs_b, 97.4, 0.1);
  c.near("w_BenchA", w["BenchA"], 0.771, 5e-4);
  c.near("w_BenchB", w["BenchB"], 0.229, 5e-4);
  c.near("MS", metriq_score({{"BenchA", 125.0}, {"BenchB", bs_b}}, w), 118.7, 0.1);
}

// ---------------------------------------------------------------- 2

void weight_table(Checks& c) {
  SeriesSpec s = SeriesSpec::load(kData / "series" / "published.json");
  double mu = 0;
  for (const auto& comp : s.components) mu += comp.effective_scale();
  c.near("sum of effective widths", mu, 483.5, 0.5);
  auto w = s.weights();
  c.near("w_BSEQ", w["BSEQ"], 0.2069, 5e-4);
  c.near("w_EPLG", w["EPLG"], 0.1494, 5e-4);
  c.near("w_MC", w["MC"], 0.1703, 5e-4);
  // the weight row printed with the subscore table
  CliRun r = cli({"score", "compute", "--series", (kData / "series" / "published.json").string(), "--table",
                  (kData / "fixtures" / "published_subscores.csv").string(), "--format", "json"});
  c.expect(r.code == 0, "score compute exit " + std::to_string(r.code) + ": " + r.err);
  if (r.code == 0) {
    json weights = json::parse(r.out).at("weights");
    for (const char* k : {"BSEQ", "EPLG", "MC"}) c.near(std::string("table weight ") + k, weights.at(k), w[k], 1e-12);
  }
}

// ---------------------------------------------------------------- 3

void score_goldens(Checks& c) {
  // BSEQ scores are printed to two decimals; compared at that precision
  c.near("BSEQ score (156 qubits)", bseq_score(156, 1.0, 113, 113.0 / 133), 135.51, 0.005);
  c.near("BSEQ score (56 qubits)", bseq_score(56, 1.0, 113, 113.0 / 133), 58.08, 0.005);
  std::map<int, double> torino{{10, 4.88e-3}, {20, 5.41e-3}, {50, 9.21e-3}, {100, 10.79e-3}};
  std::map<int, double> boston{{10, 1.64e-3}, {20, 2.16e-3}, {50, 2.45e-3}, {100, 3.08e-3}};
  std::map<int, double> emerald{{10, 4.53e-3}, {20, 8.10e-3}};
  c.near("EPLG score (full grid)", eplg_score(boston, torino), 338.40, 0.5);
  c.near("EPLG score (partial grid)", eplg_score(emerald, torino), 12.75, 0.5);
  using P = std::vector<std::optional<double>>;
  c.near("MC score A", mc_score(P{0.3172, 0.2757, 0.1268, 0.0336, 0.0037, 0.0}), 0.041559, 1e-3);
  c.near("MC score B", mc_score(P{0.7477, 0.4952, 0.4317, 0.4707, 0.2661, 0.1122}), 0.260000, 1e-3);
  c.near("QMLK score", qmlk_score({{10, 0.959}, {20, 0.913}, {30, 0.864}, {50, 0.783}}), 0.844727, 1e-3);
  auto proxy = wit_f2q_proxy(0.773);
  c.expect(proxy.has_value(), "WIT proxy undefined for E = 0.773");
  if (proxy) c.near("WIT proxy", *proxy, 0.989, 1e-3);
  c.near("LR-QAOA score A", lr_qaoa_score({{10, 0.68305}, {20, 0.66408}, {50, 0.68739}, {100, 0.67340}}),
         0.676787, 1e-3);
  c.near("LR-QAOA score B", lr_qaoa_score({{10, 0.76358}, {20, 0.74043}, {50, 0.80175}}), 0.347399, 1e-3);
  c.near("QFT score A", qft_score({{4, 0.991}, {8, 0.973}, {12, 0.937}, {20, 0.152}}), 0.5916, 1e-3);
  c.near("QFT score B", qft_score({{4, 0.862}, {8, 0.420}, {12, 0.038}, {20, 0.0}}), 0.1651, 1e-3);
}

// ---------------------------------------------------------------- 4

void table_one(Checks& c) {
  CliRun r = cli({"score", "compute", "--series", (kData / "series" / "published.json").string(), "--table",
                  (kData / "fixtures" / "published_subscores.csv").string(), "--format", "json"});
  c.expect(r.code == 0, "score compute exit " + std::to_string(r.code) + ": " + r.err);
  if (r.code != 0) return;
  json rows = json::parse(r.out).at("rows");
  c.expect(rows.size() == 11, "expected 11 devices, got " + std::to_string(rows.size()));
  int clops_absent = 0, failed_runs = 0;
  for (const auto& row : rows) {
    std::string dev = row.at("device");
    if (!row.contains("printed_score")) {
      c.expect(false, dev + ": no printed score");
      continue;
    }
    c.near(dev + " MS", row.at("metriq_score"), row.at("printed_score"), 0.5);
    const json& comps = row.at("components");
    if (comps.at("CLOPS").at("aggregate").is_null()) ++clops_absent;
    for (const auto& [_, comp] : comps.items()) {
      if (!comp.at("aggregate").is_null() && comp.at("subscore").get<double>() == 0.0) ++failed_runs;
    }
  }
  c.expect(clops_absent > 0, "fixture exercises no CLOPS-absent row");
  c.expect(failed_runs > 0, "fixture exercises no failed-run subscore");
}

// ---------------------------------------------------------------- 5

void noiseless_suite(Checks& c) {
  // whole-device benchmarks on the hex-133 coupling map with noise removed
  DeviceModel hex = noiseless(devices().get("heavy-hex-133").coupling, "ideal-hex-133");
  const std::int64_t bseq_shots = 2000;
  BseqResult b = bseq_run(hex, bseq_shots, std::nullopt, 11);
  const double three_sigma = 3 * std::sqrt(4.0 / static_cast<double>(bseq_shots));
  int off = 0;
  for (const auto& [e, s] : b.per_edge_S) off += std::abs(s - 2 * std::numbers::sqrt2) > three_sigma;
  c.expect(b.per_edge_S.size() == hex.coupling.edges().size(), "BSEQ did not cover every edge");
  c.expect(off == 0, "BSEQ: " + std::to_string(off) + " edges outside 2*sqrt2 +- 3 sigma");
  c.near("BSEQ f_conn", b.connection_fraction, 1.0, 0.0);

  for (auto [w, depth] : kMirrorPanel) {
    MirrorResult m = mirror_run(hex, w, depth, 0.5, 2, 100, 17 + w);
    c.near("Mirror polarization w=" + std::to_string(w), m.polarization, 1.0, 0.0);
  }

  DeviceModel line = noiseless(make_line(24), "ideal-line-24");
  for (int n : {2, 10, 20}) {
    QmlKernelResult q = qml_kernel_run(line, n, 500, 3 + n);
    c.near("QML accuracy n=" + std::to_string(n), q.accuracy, 1.0, 0.0);
  }
  StateVector wit = simulate_statevector(without_measurements(build_wit_circuit(7)));
  c.near("WIT statevector E", 1.0 - 2.0 * wit.probability_one(6), 1.0, 1e-9);
  c.near("WIT sampled E", wit_run(line, 7, 2000, 5).expectation, 1.0, 1e-9);

  for (int n : {4, 8, 12, 20}) {
    QftResult r = qft_run(line, n, n, 1, 2, 200, 1, 29 + n);
    c.near("QFT fidelity n=" + std::to_string(n), r.fidelity_by_width().at(n), 1.0, 1e-9);
  }

  for (int n : {6, 10, 14}) {
    auto [inst, layout] = lr_qaoa_instance(line, QaoaGraph::Line, n, 40 + n);
    std::vector<CountsMap> forced(3);
    for (auto& t : forced) t.add(inst.optimal_bitstring, 500);
    std::vector<CountsMap> random;
    for (int k = 0; k < 5; ++k) random.push_back(sample_uniform_counts(n, 500, 100 + k));
    LrQaoaResult r = evaluate_lr_qaoa(inst, forced, random, 0.95);
    c.near("LR-QAOA r_eff at x* n=" + std::to_string(n), r.effective_ratio, 1.0, 1e-12);
  }
}

// ---------------------------------------------------------------- 6

void injected_noise(Checks& c) {
  DeviceModel d = noiseless(make_line(50), "line-50-p2");
  d.noise.p2 = 4e-3;
  json params = schemas().validate({{"benchmark_name", "EPLG"}, {"num_qubits_in_chain", 50},
                                    {"num_samples", 10}, {"shots", 1000}});
  EplgResult r = eplg_run(d, 50, params.at("lengths").get<std::vector<int>>(), 10, 1000, 2026);
  c.within("EPLG on a p2 = 4e-3 line", r.eplg, 0.8 * 4e-3, 1.2 * 4e-3);

  for (int m : {1, 2}) {
    for (double alpha : {0.999, 0.98, 0.9}) {
      const double dim = std::pow(2.0, m);
      std::vector<std::pair<double, double>> pts;
      for (int l : {1, 2, 4, 8, 16, 32, 64, 128}) pts.emplace_back(l, 0.7 * std::pow(alpha, l) + 1 / dim);
      RbFit f = fit_rb_decay(pts, m);
      std::ostringstream what;
      what << "fitted alpha (" << m << "q, " << alpha << ")";
      c.near(what.str(), f.alpha, alpha, 1e-6);
    }
  }
}

// ---------------------------------------------------------------- 7

std::map<std::string, double> exact_distribution(const Circuit& unitary) {
  oracle::Vec psi = oracle::circuit_state(unitary);
  const int n = unitary.num_qubits();
  std::map<std::string, double> p;
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    double pr = std::norm(psi(i));
    if (pr < 1e-14) continue;
    std::string s(n, '0');
    for (int q = 0; q < n; ++q) s[q] = ((i >> q) & 1) ? '1' : '0';
    p[s] += pr;
  }
  return p;
}

void oracle_equivalence(Checks& c) {
  std::mt19937_64 rng(7);
  int cut_mismatch = 0;
  for (int t = 0; t < 50; ++t) {
    int n = 3 + static_cast<int>(rng() % 14);  // 3..16
    std::vector<Edge> edges;
    for (int i = 1; i < n; ++i) edges.push_back(make_edge(static_cast<int>(rng() % i), i));
    for (int k = 0; k < n; ++k) {
      int a = static_cast<int>(rng() % n), b = static_cast<int>(rng() % n);
      if (a != b && std::find(edges.begin(), edges.end(), make_edge(a, b)) == edges.end())
        edges.push_back(make_edge(a, b));
    }
    MaxCutInstance inst = make_maxcut_instance(n, edges, rng());
    double brute = solve_maxcut_brute_force(inst).second;
    double annealed = solve_maxcut_annealing(inst, rng()).second;
    cut_mismatch += std::abs(brute - annealed) > 1e-9 || std::abs(inst.optimal_value - brute) > 1e-9;
  }
  c.expect(cut_mismatch == 0, "MaxCut: annealing differs from brute force on " +
                                  std::to_string(cut_mismatch) + " of 50 instances");

  const Graph grid = make_grid(3, 4);
  int mirror_mismatch = 0;
  for (int t = 0; t < 50; ++t) {
    int w = 1 + static_cast<int>(rng() % 12);
    int layers = 1 + static_cast<int>(rng() % 8);
    double prob = static_cast<double>(rng() % 5) / 4;
    MirrorCircuitSpec spec = generate_mirror_spec(grid, w, layers, prob, rng());
    auto probs = simulate_statevector(without_measurements(spec.to_circuit(grid.num_vertices()))).probabilities();
    std::size_t argmax = std::max_element(probs.begin(), probs.end()) - probs.begin();
    std::string bits(w, '0');
    for (int q = 0; q < w; ++q) bits[q] = ((argmax >> spec.qubits[q]) & 1) ? '1' : '0';
    mirror_mismatch += expected_mirror_bitstring(spec) != bits || std::abs(probs[argmax] - 1) > 1e-9;
  }
  c.expect(mirror_mismatch == 0, "Mirror: expected bitstring differs from statevector argmax on " +
                                     std::to_string(mirror_mismatch) + " of 50 specs");

  int tvd_fail = 0;
  for (int t = 0; t < 20; ++t) {
    int n = 1 + t % 10;
    Circuit unitary = oracle::random_circuit(n, 8 * n, rng, true);
    Circuit circ = unitary;
    circ.measure_all();
    CountsMap counts = sample_counts(circ, 10000, std::nullopt, 500 + t);
    auto p = exact_distribution(unitary);
    double tvd = 0, sigma = 0;
    for (const auto& [k, pk] : p) {
      tvd += std::abs(counts.probability(k) - pk);
      sigma += std::sqrt(pk * (1 - pk) / static_cast<double>(counts.shots));
    }
    for (const auto& [k, v] : counts.counts) {
      if (!p.count(k)) tvd += static_cast<double>(v) / static_cast<double>(counts.shots);
    }
    tvd_fail += tvd / 2 >= 3 * sigma / 2 + 1e-12;
  }
  c.expect(tvd_fail == 0, "tableau vs statevector: TVD above 3 sigma on " + std::to_string(tvd_fail) +
                              " of 20 circuits");
}

// ---------------------------------------------------------------- 8

void analytics(Checks& c) {
  CliRun r = cli({"analyze", "--table", (kData / "fixtures" / "published_subscores.csv").string(), "--format",
                  "json"});
  c.expect(r.code == 0, "analyze exit " + std::to_string(r.code) + ": " + r.err);
  if (r.code != 0) return;
  json j = json::parse(r.out);
  auto labels = j.at("spearman").at("benchmarks").get<std::vector<std::string>>();
  auto col = [&](const std::string& l) {
    return static_cast<std::size_t>(std::find(labels.begin(), labels.end(), l) - labels.begin());
  };
  c.near("Spearman(MC, QML)", j["spearman"]["rho"][col("MC")][col("QML")].get<double>(), 0.991, 0.02);
  c.near("PCA first-component variance", j["pca"]["first_variance"].get<double>(), 0.88, 0.04);
  c.expect(j["regression"]["lambda"].get<double>() == kDefaultRidgeLambda, "ridge not at the default lambda");
  c.within("ridge LOO R2_log (QML from BSEQ, EPLG, MC)", j["regression"]["r2_log"].get<double>(), 0.85, 0.97);
}

// ---------------------------------------------------------------- 9

std::vector<std::string> problems_of(const json& params) {
  try {
    schemas().validate(params);
  } catch (const ValidationError& e) {
    return e.problems();
  }
  return {};
}

bool mentions(const std::vector<std::string>& v, const std::string& needle) {
  return std::any_of(v.begin(), v.end(), [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

void platform(Checks& c) {
  // dataset path round trip
  std::mt19937_64 rng(99);
  const std::vector<std::string> names = {"BSEQ", "EPLG", "Mirror Circuits", "CLOPS", "QML Kernel",
                                          "WIT", "Linear Ramp QAOA", "Quantum Fourier Transform"};
  const std::string alphabet = "abcXYZ019._-";
  auto word = [&] {
    std::string s(1, "abcdefgh0123"[rng() % 12]);
    for (int i = 0, k = 1 + static_cast<int>(rng() % 10); i < k; ++i) s += alphabet[rng() % alphabet.size()];
    return s;
  };
  int path_fail = 0;
  for (int t = 0; t < 200; ++t) {
    BenchmarkRecord r;
    r.source = word();
    r.version = word();
    r.provider = word();
    r.device = word();
    r.benchmark_name = names[rng() % names.size()];
    char ts[32];
    std::snprintf(ts, sizeof ts, "20%02d-%02d-%02dT%02d:%02d:%02dZ", static_cast<int>(rng() % 100),
                  1 + static_cast<int>(rng() % 12), 1 + static_cast<int>(rng() % 28),
                  static_cast<int>(rng() % 24), static_cast<int>(rng() % 60), static_cast<int>(rng() % 60));
    r.timestamp = ts;
    r.params = {{"t", t}};
    r.seal();
    RecordPathParts p = parse_record_path(record_path(r));
    path_fail += !(p == RecordPathParts{r.source, r.version, r.provider, r.device, r.timestamp,
                                         benchmark_type(r.benchmark_name), r.id});
  }
  c.expect(path_fail == 0, "record path round trip failed " + std::to_string(path_fail) + " times");

  // two concurrent writers
  {
    TempDir dir;
    std::vector<BenchmarkRecord> all;
    for (int round = 0; round < 20; ++round) {
      BenchmarkRecord a, b;
      for (auto* r : {&a, &b}) {
        r->timestamp = "2025-12-01T10:00:00Z";
        r->provider = "local";
        r->device = "dev";
        r->benchmark_name = "QML Kernel";
        r->params = schemas().validate({{"benchmark_name", "QML Kernel"}, {"num_qubits", 2 + round}});
        r->results = {{"accuracy", r == &a ? 0.5 : 0.25}};
        r->seal();
      }
      std::thread ta([&] { upload_record(dir.path(), a); });
      std::thread tb([&] { upload_record(dir.path(), b); });
      std::thread tc([&] { upload_record(dir.path(), a); });  // same record raced twice
      ta.join();
      tb.join();
      tc.join();
      all.push_back(a);
      all.push_back(b);
    }
    ScanResult s = scan_dataset(dir.path(), {}, &schemas());
    c.expect(s.records.size() == all.size(), "concurrent upload left " + std::to_string(s.records.size()) +
                                                 " records, want " + std::to_string(all.size()));
    c.expect(s.diagnostics.empty(), "concurrent upload left unreadable files");
    std::size_t files = 0;
    for (const auto& e : fs::recursive_directory_iterator(dir.path())) files += e.is_regular_file();
    c.expect(files == all.size(), "temporary files left behind");
  }

  // dispatch/poll against synchronous execution
  {
    const std::vector<json> suite = {
        {{"benchmark_name", "BSEQ"}, {"shots", 200}},
        {{"benchmark_name", "EPLG"}, {"num_qubits_in_chain", 6}, {"lengths", {1, 2, 4, 8}},
         {"num_samples", 2}, {"shots", 100}},
        {{"benchmark_name", "Mirror Circuits"}, {"width", 6}, {"num_layers", 4}, {"num_circuits", 3},
         {"shots", 200}},
        {{"benchmark_name", "CLOPS"}, {"num_qubits", 10}, {"num_layers", 5}, {"num_circuits", 10},
         {"shots", 50}},
        {{"benchmark_name", "QML Kernel"}, {"num_qubits", 6}, {"shots", 300}},
        {{"benchmark_name", "WIT"}, {"num_qubits", 7}, {"shots", 500}},
        {{"benchmark_name", "Linear Ramp QAOA"}, {"num_qubits", 6}, {"qaoa_layers", {2, 3}},
         {"trials", 2}, {"num_random_trials", 3}, {"shots", 200}},
        {{"benchmark_name", "Quantum Fourier Transform"}, {"min_qubits", 3}, {"max_qubits", 7},
         {"skip_qubits", 4}, {"max_circuits", 2}, {"shots", 200}},
    };
    JobRuntime rt(devices(), schemas(), RuntimeOptions{});
    const DeviceModel& dev = devices().get("heavy-hex-133");
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < suite.size(); ++i) ids.push_back(rt.dispatch(suite[i], "local", "hex133", 500 + i));
    rt.wait_all();
    for (std::size_t i = 0; i < suite.size(); ++i) {
      const std::string name = suite[i].at("benchmark_name");
      Job j = rt.poll(ids[i]);
      if (j.state != JobState::Done || !j.result) {
        c.expect(false, name + ": job ended " + to_string(j.state) + " " + j.error);
        continue;
      }
      BenchmarkRecord sync = run_benchmark(schemas().validate(suite[i]), dev, 500 + i, j.result->timestamp);
      c.expect(canonical_dump(j.result->to_json()) == canonical_dump(sync.to_json()),
               name + ": polled record differs from synchronous execution");
    }
  }

  // schema error cases
  auto p = problems_of({{"benchmark_name", "QML Kernel"}, {"num_qubits", 1}});
  c.expect(p.size() == 1 && mentions(p, "minimum 2"), "QML num_qubits = 1 not rejected with minimum 2");
  p = problems_of({{"benchmark_name", "QML Kernel"}, {"shots", 10}});
  c.expect(p.size() == 1 && mentions(p, "required") && mentions(p, "num_qubits"),
           "missing QML num_qubits not reported as required");
  json filled = schemas().validate({{"benchmark_name", "QML Kernel"}, {"num_qubits", 10}});
  c.expect(filled.at("shots") == 1000, "QML shots default is not 1000");
  p = problems_of({{"benchmark_name", "QML Kernel"}, {"num_qubits", 1}, {"shots", 0}});
  c.expect(p.size() == 2, "violations are not all reported");
}

// ---------------------------------------------------------------- 10

CliRun exe(const std::vector<std::string>& args, const fs::path& scratch) {
  std::string cmd = QBENCH_EXE;
  for (const auto& a : args) cmd += " '" + a + "'";
  const fs::path err = scratch / "stderr.txt";
  cmd += " 2>'" + err.string() + "'";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(err);
  r.err.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  return r;
}

void end_to_end(Checks& c) {
  TempDir dir;
  const std::string root = (dir.path() / "dataset").string();
  auto run = [&](std::vector<std::string> args) {
    args.insert(args.end(), {"--dataset-root", root, "--format", "json"});
    CliRun r = exe(args, dir.path());
    c.expect(r.code == 0, args[0] + " " + args[1] + " exit " + std::to_string(r.code) + ": " + r.err);
    return r;
  };
  CliRun d = run({"suite", "dispatch", (kData / "suites" / "uf_complete.json").string(), "--provider", "local",
                  "--device", "hex133"});
  if (d.code != 0) return;
  json dispatched = json::parse(d.out);
  c.expect(dispatched.at("job_ids").size() == 8, "suite dispatch did not queue 8 jobs");

  CliRun p = run({"suite", "poll", dispatched.at("suite_id"), "--wait", "--upload"});
  if (p.code != 0) return;
  json polled = json::parse(p.out);
  c.expect(polled.at("done") == 8, "suite finished with " + polled.at("done").dump() + " of 8 jobs done");
  c.expect(polled.at("uploaded").size() == 8, "suite uploaded " + std::to_string(polled.at("uploaded").size()) +
                                                  " records");

  ScanResult s = scan_dataset(root, {}, &schemas());
  c.expect(s.diagnostics.empty(), "dataset scan reported problems");
  std::set<std::string> names;
  for (const auto& r : s.records) {
    c.expect(r.compute_hash() == r.id, r.benchmark_name + ": record hash mismatch");
    c.expect(r.device == "heavy-hex-133", r.benchmark_name + ": record device " + r.device);
    names.insert(r.benchmark_name);
  }
  c.expect(s.records.size() == 8 && names.size() == 8, "dataset does not hold 8 distinct benchmarks");

  CliRun sc = run({"score", "compute", "--series", (kData / "series" / "desk.json").string()});
  if (sc.code != 0) return;
  json table = json::parse(sc.out);
  bool found = false;
  for (const auto& row : table.at("rows")) {
    if (row.at("device") != "heavy-hex-133") continue;
    found = true;
    for (const auto& label : table.at("labels")) {
      const json& comp = row.at("components").at(label.get<std::string>());
      c.expect(!comp.at("aggregate").is_null(), label.get<std::string>() + " missing from the score table");
    }
    c.near("baseline device MS", row.at("metriq_score"), 100.0, 1e-9);
  }
  c.expect(found, "score table has no heavy-hex-133 row");
}

struct Criterion {
  int id;
  std::string title;
  double budget_seconds;
  std::function<void(Checks&)> body;
};

}  // namespace
}  // namespace qbench

int main(int argc, char** argv) {
  using namespace qbench;
  const std::vector<Criterion> criteria = {
      {1, "worked-example score", 1, worked_example},
      {2, "weight table", 1, weight_table},
      {3, "score-formula goldens", 1, score_goldens},
      {4, "published composite reconstruction", 1, table_one},
      {5, "noiseless-ideal suite", 180, noiseless_suite},
      {6, "injected-noise recovery", 120, injected_noise},
      {7, "oracle equivalence", 180, oracle_equivalence},
      {8, "analytics reproduction", 5, analytics},
      {9, "platform properties", 30, platform},
      {10, "end-to-end suite, upload and score", 600, end_to_end},
  };
  int only = argc > 1 ? std::atoi(argv[1]) : 0;
  int failed = 0;
  for (const auto& cr : criteria) {
    if (only && cr.id != only) continue;
    Checks checks;
    auto t0 = Clock::now();
    try {
      cr.body(checks);
    } catch (const std::exception& e) {
      checks.expect(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    std::ostringstream budget;
    budget << std::fixed << std::setprecision(2) << "took " << secs << " s, budget " << cr.budget_seconds << " s";
    checks.expect(secs < cr.budget_seconds, budget.str());
    const bool ok = checks.failures().empty();
    failed += !ok;
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << cr.id << ": " << cr.title << " (" << std::fixed
              << std::setprecision(2) << secs << " s)";
    for (const auto& f : checks.failures()) std::cout << "\n    " << f;
    std::cout << std::endl;
  }
  return failed ? 1 : 0;
}
