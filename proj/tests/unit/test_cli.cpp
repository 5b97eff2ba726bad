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
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <regex>
#include <sstream>

#include <gtest/gtest.h>

#include "qbench/cli/cli.hpp"
#include "qbench/dataset/record.hpp"
#include "qbench/jobs/runtime.hpp"

namespace qbench {
namespace {

namespace fs = std::filesystem;

const fs::path kData = QBENCH_DATA_DIR;

struct Result {
  int code = -1;
  std::string out, err;
  json j() const { return json::parse(out); }
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    std::random_device rd;
    dir_ = fs::temp_directory_path() / ("qbench-cli-" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(dir_);
    env_.cwd = dir_;
    env_.getenv = [this](const std::string& k) -> std::optional<std::string> {
      auto it = vars_.find(k);
      if (it == vars_.end()) return std::nullopt;
      return it->second;
    };
  }
  void TearDown() override { fs::remove_all(dir_); }

  Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    Result r;
    r.code = run_cli(args, out, err, env_);
    r.out = out.str();
    r.err = err.str();
    return r;
  }

  std::string root() const { return (dir_ / "ds").string(); }

  fs::path dir_;
  CliEnvironment env_;
  std::map<std::string, std::string> vars_;
};

TEST(ExitCodes, DistinctPerErrorKind) {
  EXPECT_EQ(exit_code(ErrorKind::Usage), 2);
  EXPECT_EQ(exit_code(ErrorKind::Validation), 3);
  EXPECT_EQ(exit_code(ErrorKind::Execution), 4);
  EXPECT_EQ(exit_code(ErrorKind::Io), 5);
  EXPECT_EQ(exit_code(ErrorKind::NotFound), 6);
}

TEST_F(CliTest, UnknownResourceOrActionIsUsage) {
  Result a = run({"frobnicate"});
  EXPECT_EQ(a.code, 2);
  EXPECT_NE(a.err.find("Usage"), std::string::npos) << a.err;
  EXPECT_EQ(run({"job", "explode", "x"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(CliTest, PollUnknownJobFails) {
  Result r = run({"job", "poll", "0123456789abcdef", "--dataset-root", root()});
  EXPECT_EQ(r.code, 6);
  EXPECT_NE(r.err.find("unknown job"), std::string::npos);
  EXPECT_TRUE(r.out.empty());
}

TEST_F(CliTest, DispatchMirrorConfigPrintsJobId) {
  Result r = run({"job", "dispatch", (kData / "configs" / "mc_config.json").string(), "--provider",
                  "local", "--device", "aer_like", "--dataset-root", root()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(std::regex_match(r.out, std::regex("[0-9a-f]{16}\n"))) << r.out;
  std::string id = r.out.substr(0, 16);

  Result q = run({"job", "poll", id, "--dataset-root", root(), "--format", "json"});
  ASSERT_EQ(q.code, 0);
  EXPECT_EQ(q.j().at("state"), "queued");

  Result w = run({"job", "poll", id, "--wait", "--dataset-root", root(), "--format", "json"});
  ASSERT_EQ(w.code, 0) << w.err;
  Job job = Job::from_json(w.j());
  ASSERT_EQ(job.state, JobState::Done);
  // the JSON result parses back into a verified record
  BenchmarkRecord rec = BenchmarkRecord::from_json(w.j().at("result"));
  EXPECT_EQ(rec.compute_hash(), rec.id);
  EXPECT_DOUBLE_EQ(rec.results.at("polarization").get<double>(), 1.0);  // noiseless

  Result up = run({"job", "upload", id, "--dataset-root", root(), "--format", "json"});
  ASSERT_EQ(up.code, 0) << up.err;
  fs::path file = up.j().at("path").get<std::string>();
  EXPECT_TRUE(fs::exists(file));
  EXPECT_EQ(load_record(file).id, rec.id);

  Result scan = run({"dataset", "scan", "--dataset-root", root(), "--format", "json"});
  ASSERT_EQ(scan.code, 0) << scan.err;
  ASSERT_EQ(scan.j().at("records").size(), 1u);
  EXPECT_EQ(BenchmarkRecord::from_json(scan.j().at("records")[0]).id, rec.id);
  EXPECT_TRUE(scan.j().at("diagnostics").empty());
}

TEST_F(CliTest, UploadOfUnfinishedJobIsExecutionError) {
  Result r = run({"job", "dispatch", (kData / "configs" / "bseq_config.json").string(), "--device",
                  "grid-20", "--dataset-root", root()});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(run({"job", "upload", r.out.substr(0, 16), "--dataset-root", root()}).code, 4);
}

TEST_F(CliTest, SuiteDispatchQueuesEightJobs) {
  Result r = run({"suite", "dispatch", (kData / "suites" / "uf_complete.json").string(), "--provider",
                  "local", "--device", "hex133", "--dataset-root", root(), "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.j().at("job_ids").size(), 8u);
  std::string sid = r.j().at("suite_id");
  Result p = run({"suite", "poll", sid, "--dataset-root", root(), "--format", "json"});
  ASSERT_EQ(p.code, 0);
  EXPECT_EQ(p.j().at("total"), 8);
  EXPECT_EQ(run({"suite", "poll", "ffffffffffffffff", "--dataset-root", root()}).code, 6);
}

TEST_F(CliTest, SuiteWaitAndUpload) {
  fs::path suite = dir_ / "mini.json";
  std::ofstream(suite) << R"({"name": "mini", "benchmarks": [
      {"benchmark_name": "WIT", "shots": 200},
      {"benchmark_name": "QML Kernel", "num_qubits": 4, "shots": 200}]})";
  Result r = run({"suite", "dispatch", suite.string(), "--device", "grid-20", "--dataset-root", root(),
                  "--format", "json", "--seed", "7"});
  ASSERT_EQ(r.code, 0) << r.err;
  Result p = run({"suite", "poll", r.j().at("suite_id"), "--wait", "--upload", "--dataset-root", root(),
                  "--format", "json"});
  ASSERT_EQ(p.code, 0) << p.err;
  EXPECT_EQ(p.j().at("done"), 2);
  EXPECT_EQ(p.j().at("uploaded").size(), 2u);
  Result scan = run({"dataset", "scan", "--dataset-root", root(), "--benchmark", "wit", "--format", "json"});
  EXPECT_EQ(scan.j().at("records").size(), 1u);
}

TEST_F(CliTest, InvalidConfigIsValidationError) {
  fs::path cfg = dir_ / "bad.json";
  std::ofstream(cfg) << R"({"benchmark_name": "QML Kernel", "shots": 0})";
  Result r = run({"job", "dispatch", cfg.string(), "--device", "grid-20", "--dataset-root", root(),
                  "--format", "json"});
  EXPECT_EQ(r.code, 3);
  json e = json::parse(r.err).at("error");
  EXPECT_EQ(e.at("kind"), "validation");
  EXPECT_GE(e.at("problems").size(), 2u);
  EXPECT_FALSE(fs::exists(fs::path(root()) / ".jobs.jsonl"));

  std::ofstream(dir_ / "broken.json") << "{not json";
  EXPECT_EQ(run({"job", "dispatch", (dir_ / "broken.json").string(), "--device", "grid-20",
                 "--dataset-root", root()}).code, 3);
  EXPECT_EQ(run({"job", "dispatch", (dir_ / "missing.json").string(), "--device", "grid-20",
                 "--dataset-root", root()}).code, 6);
  EXPECT_EQ(run({"job", "dispatch", (kData / "configs" / "mc_config.json").string(), "--dataset-root",
                 root()}).code, 2);  // no device
  EXPECT_EQ(run({"job", "dispatch", (kData / "configs" / "mc_config.json").string(), "--device",
                 "nowhere", "--dataset-root", root()}).code, 6);
}

TEST_F(CliTest, ScoreComputeReproducesPublishedScores) {
  Result r = run({"score", "compute", "--series", (kData / "series" / "published.json").string(), "--table",
                  (kData / "fixtures" / "published_subscores.csv").string(), "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  json rows = r.j().at("rows");
  ASSERT_EQ(rows.size(), 11u);
  for (const auto& row : rows) {
    ASSERT_FALSE(row.at("printed_score").is_null());
    EXPECT_NEAR(row.at("metriq_score").get<double>(), row.at("printed_score").get<double>(), 0.5)
        << row.at("device");
  }
  Result csv = run({"score", "compute", "--series", (kData / "series" / "published.json").string(), "--table",
                    (kData / "fixtures" / "published_subscores.csv").string(), "--format", "csv"});
  EXPECT_EQ(csv.out.rfind("device,qubits,BSEQ", 0), 0u) << csv.out;
}

TEST_F(CliTest, AnalyzeEmitsCorrelationPcaAndRegression) {
  std::string table = (kData / "fixtures" / "published_subscores.csv").string();
  Result r = run({"analyze", "--table", table, "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = r.j();
  auto labels = j.at("spearman").at("benchmarks").get<std::vector<std::string>>();
  auto at = [&](const std::string& l) {
    return static_cast<std::size_t>(std::find(labels.begin(), labels.end(), l) - labels.begin());
  };
  EXPECT_NEAR(j["spearman"]["rho"][at("MC")][at("QML")].get<double>(), 0.9909, 5e-4);
  EXPECT_NEAR(j["pca"]["first_variance"].get<double>(), 0.896, 5e-4);
  EXPECT_EQ(j["regression"]["target"], "QML");
  EXPECT_DOUBLE_EQ(j["regression"]["lambda"].get<double>(), 1.0);

  fs::path out = dir_ / "analysis";
  Result f = run({"analyze", "--table", table, "--out-dir", out.string(), "--format", "csv"});
  ASSERT_EQ(f.code, 0) << f.err;
  EXPECT_EQ(f.out.rfind("benchmark,BSEQ,EPLG", 0), 0u);
  for (const char* name : {"spearman.csv", "pca.json", "regression.json", "spearman.svg"}) {
    EXPECT_TRUE(fs::exists(out / name)) << name;
  }
  EXPECT_EQ(run({"analyze", "--table", table, "--target", "NOPE"}).code, 6);  // unknown column
}

TEST_F(CliTest, EstimateWithPricing) {
  Result r = run({"job", "estimate", (kData / "configs" / "bseq_config.json").string(), "--device",
                  "hex133", "--pricing", (kData / "pricing" / "hqc.json").string(), "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = r.j();
  EXPECT_EQ(j.at("tasks").get<int>() % 4, 0);
  EXPECT_EQ(j.at("total_shots").get<int>(), j.at("tasks").get<int>() * 1000);
  EXPECT_GT(j.at("hqc").get<double>(), 0.0);
  EXPECT_GT(j.at("runtime_seconds").get<double>(), 0.0);

  fs::path bad = dir_ / "pricing.json";
  std::ofstream(bad) << R"({"model": "hqc", "base": 5})";
  EXPECT_EQ(run({"job", "estimate", (kData / "configs" / "bseq_config.json").string(), "--device",
                 "hex133", "--pricing", bad.string()}).code, 3);
}

TEST_F(CliTest, ConfigPrecedenceFlagsEnvFile) {
  fs::path cfg = dir_ / "qbench.json";
  std::ofstream(cfg) << R"({"dataset_root": "from-file", "device": "grid-20", "provider": "p-file",
                            "format": "csv"})";
  Result a = run({"config", "show", "--config", cfg.string(), "--format", "json"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.j().at("dataset_root"), (dir_ / "from-file").string());  // relative to the file
  EXPECT_EQ(a.j().at("device"), "grid-20");
  EXPECT_EQ(a.j().at("provider"), "p-file");

  vars_["QBENCH_CONFIG"] = cfg.string();
  vars_["QBENCH_DEVICE"] = "line-82";
  Result b = run({"config", "show", "--format", "json"});
  EXPECT_EQ(b.j().at("device"), "line-82");
  EXPECT_EQ(b.j().at("provider"), "p-file");

  Result c = run({"config", "show", "--device", "hex133", "--format", "json"});
  EXPECT_EQ(c.j().at("device"), "hex133");

  Result d = run({"config", "show"});  // file says csv
  EXPECT_EQ(d.out.rfind("setting,value", 0), 0u) << d.out;

  vars_["QBENCH_FORMAT"] = "yaml";
  EXPECT_EQ(run({"config", "show"}).code, 2);
}

TEST_F(CliTest, EplgDecayPlotAndExport) {
  fs::path cfg = dir_ / "eplg.json";
  std::ofstream(cfg) << R"({"benchmark_name": "EPLG", "num_qubits_in_chain": 10,
                            "lengths": [1, 2, 4, 8], "num_samples": 2, "shots": 100})";
  Result r = run({"job", "dispatch", cfg.string(), "--device", "line-82", "--dataset-root", root()});
  ASSERT_EQ(r.code, 0) << r.err;
  std::string id = r.out.substr(0, 16);
  ASSERT_EQ(run({"job", "upload", id, "--wait", "--dataset-root", root()}).code, 0);
  fs::path svg = dir_ / "decay.svg";
  Result v = run({"job", "view", id, "--svg", svg.string(), "--dataset-root", root()});
  ASSERT_EQ(v.code, 0) << v.err;
  std::ifstream in(svg);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_NE(text.find("<svg"), std::string::npos);
  EXPECT_NE(text.find("<polyline"), std::string::npos);

  fs::path bundle = dir_ / "bundle.json";
  ASSERT_EQ(run({"dataset", "export", "--output", bundle.string(), "--dataset-root", root()}).code, 0);
  json b = json::parse(std::ifstream(bundle));
  ASSERT_EQ(b.at("benchmarks").size(), 1u);
  EXPECT_EQ(BenchmarkRecord::from_json(b["benchmarks"][0]).benchmark_name, "EPLG");
}

TEST_F(CliTest, ScanFlagsTamperedFiles) {
  fs::path cfg = dir_ / "wit.json";
  std::ofstream(cfg) << R"({"benchmark_name": "WIT", "shots": 100})";
  Result r = run({"job", "dispatch", cfg.string(), "--device", "grid-20", "--dataset-root", root()});
  Result up = run({"job", "upload", r.out.substr(0, 16), "--wait", "--dataset-root", root(), "--format", "json"});
  ASSERT_EQ(up.code, 0) << up.err;
  fs::path file = up.j().at("path").get<std::string>();
  json rec = json::parse(std::ifstream(file));
  rec["results"]["expectation"] = 0.5;
  std::ofstream(file) << rec.dump();
  Result scan = run({"dataset", "scan", "--dataset-root", root(), "--strict"});
  EXPECT_EQ(scan.code, 3);
  EXPECT_NE(scan.err.find("hash"), std::string::npos) << scan.err;
}

}  // namespace
}  // namespace qbench
