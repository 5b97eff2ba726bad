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

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qbench/dataset/record.hpp"

namespace qbench {

using json = nlohmann::json;

enum class Direction { HigherBetter, LowerBetter };

Direction direction_from_string(const std::string& s);
std::string to_string(Direction d);

/// alpha_i = n_i / sum(n).
std::vector<double> width_weights(const std::vector<int>& widths);

/// sum(alpha_i * v_i), applied to raw values before normalization.
double width_aggregate(const std::vector<double>& values, const std::vector<double>& weights);

/// 100 * v / v_base (higher is better) or 100 * v_base / v (lower is
/// better). A non-positive or non-finite denominator is missing data: 0.
double baseline_normalize(double value, double base, Direction direction);

/// sum(n^2) / sum(n).
double effective_width(const std::vector<int>& widths);

/// w_b = mu_b / sum(mu).
std::map<std::string, double> benchmark_weights(const std::map<std::string, double>& mu);

/// sum(w_b * BS_b). Benchmarks absent from \p subscores count as 0.
double metriq_score(const std::map<std::string, double>& subscores,
                    const std::map<std::string, double>& weights);

// ---------------------------------------------------------------- series

/// How raw record values turn into a subscore.
///  linear: width-weighted aggregate of one metric, then baseline_normalize.
///  bseq:   bseq_score of (lccs, connection_fraction) against the baseline.
///  eplg:   eplg_score of the per-width EPLG map against the baseline map.
enum class Aggregation { Linear, Bseq, Eplg };

Aggregation aggregation_from_string(const std::string& s);
std::string to_string(Aggregation a);

struct SeriesComponent {
  std::string label;      // table column, e.g. "MC"
  std::string benchmark;  // record benchmark_name
  std::string metric;     // key in record results
  json selector = json::object();  // params that a record must match
  std::vector<int> widths;         // evaluation widths
  std::optional<double> n_ref;     // declared scale; whole-device benchmarks
  Direction direction = Direction::HigherBetter;
  Aggregation aggregation = Aggregation::Linear;

  /// n_ref when declared, else effective_width(widths).
  double effective_scale() const;
  json to_json() const;
  static SeriesComponent from_json(const json& j);
};

struct SeriesSpec {
  std::string series;
  std::string baseline_device;
  std::vector<SeriesComponent> components;

  std::vector<std::string> labels() const;
  std::map<std::string, double> weights() const;

  json to_json() const;
  static SeriesSpec from_json(const json& j);
  static SeriesSpec load(const std::filesystem::path& file);
};

// ---------------------------------------------------------------- tables

struct ComponentScore {
  std::string label;
  std::map<int, double> raw;         // per-width raw values found in records
  std::optional<double> aggregate;   // width aggregate; empty when unmeasured
  double subscore = 0.0;
  std::vector<std::string> record_ids;
};

struct DeviceScore {
  std::string device;
  std::optional<int> num_qubits;
  std::vector<ComponentScore> components;  // series order
  double metriq_score = 0.0;
  std::optional<double> printed_score;     // reference value from a fixture

  std::optional<double> subscore(const std::string& label) const;
};

struct ScoreTable {
  std::string series;
  std::string baseline_device;
  std::vector<std::string> labels;
  std::map<std::string, double> weights;
  std::vector<DeviceScore> rows;
  std::vector<std::string> warnings;

  const DeviceScore& row(const std::string& device) const;
  json to_json() const;
  std::string to_csv() const;
};

/// Scores every device in \p records (or only \p devices when non-empty).
/// Per width and component the most recent matching record wins; equal
/// timestamps fall to the larger record hash.
ScoreTable compute_score_table(const SeriesSpec& series, const std::vector<BenchmarkRecord>& records,
                               const std::vector<std::string>& devices = {});

/// One row of a printed subscore table. Empty cells are absent benchmarks.
struct SubscoreRow {
  std::string device;
  std::optional<int> num_qubits;
  std::map<std::string, std::optional<double>> subscores;
  std::optional<double> printed_score;
};

/// CSV with header "device,qubits,<labels...>,MS"; "-" or empty marks absent.
std::vector<SubscoreRow> load_subscore_csv(const std::filesystem::path& file);

/// Rebuilds composites from subscores; absent benchmarks contribute 0.
ScoreTable score_table_from_subscores(const SeriesSpec& series, const std::vector<SubscoreRow>& rows);

}  // namespace qbench
