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

#include "qbench/scoring/score.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "qbench/bench/system.hpp"
#include "qbench/common/error.hpp"

namespace qbench {

Direction direction_from_string(const std::string& s) {
  if (s == "higher_better") return Direction::HigherBetter;
  if (s == "lower_better") return Direction::LowerBetter;
  throw Error(ErrorKind::Validation, "unknown direction: " + s);
}

std::string to_string(Direction d) {
  return d == Direction::HigherBetter ? "higher_better" : "lower_better";
}

std::vector<double> width_weights(const std::vector<int>& widths) {
  if (widths.empty()) throw std::invalid_argument("width_weights: no widths");
  double total = 0.0;
  for (int n : widths) {
    if (n <= 0) throw std::invalid_argument("width_weights: widths must be positive");
    total += n;
  }
  std::vector<double> out;
  for (int n : widths) out.push_back(n / total);
  return out;
}

double width_aggregate(const std::vector<double>& values, const std::vector<double>& weights) {
  if (values.size() != weights.size()) {
    throw std::invalid_argument("width_aggregate: values and weights differ in length");
  }
  return std::inner_product(values.begin(), values.end(), weights.begin(), 0.0);
}

double baseline_normalize(double value, double base, Direction direction) {
  const double den = direction == Direction::HigherBetter ? base : value;
  const double num = direction == Direction::HigherBetter ? value : base;
  if (!std::isfinite(den) || den <= 0.0 || !std::isfinite(num)) return 0.0;
  return 100.0 * num / den;
}

double effective_width(const std::vector<int>& widths) {
  if (widths.empty()) throw std::invalid_argument("effective_width: no widths");
  double s1 = 0.0, s2 = 0.0;
  for (int n : widths) {
    if (n <= 0) throw std::invalid_argument("effective_width: widths must be positive");
    s1 += n;
    s2 += static_cast<double>(n) * n;
  }
  return s2 / s1;
}

std::map<std::string, double> benchmark_weights(const std::map<std::string, double>& mu) {
  double total = 0.0;
  for (const auto& [b, m] : mu) {
    if (!(m > 0.0)) throw std::invalid_argument("benchmark_weights: mu must be positive for " + b);
    total += m;
  }
  std::map<std::string, double> out;
  for (const auto& [b, m] : mu) out[b] = m / total;
  return out;
}

double metriq_score(const std::map<std::string, double>& subscores,
                    const std::map<std::string, double>& weights) {
  double wsum = 0.0, score = 0.0;
  for (const auto& [b, w] : weights) {
    wsum += w;
    if (auto it = subscores.find(b); it != subscores.end()) score += w * it->second;
  }
  if (std::abs(wsum - 1.0) > 1e-9) throw std::invalid_argument("metriq_score: weights must sum to 1");
  for (const auto& [b, _] : subscores) {
    if (!weights.count(b)) throw std::invalid_argument("metriq_score: no weight for " + b);
  }
  return score;
}

// ---------------------------------------------------------------- series

Aggregation aggregation_from_string(const std::string& s) {
  if (s == "linear") return Aggregation::Linear;
  if (s == "bseq") return Aggregation::Bseq;
  if (s == "eplg") return Aggregation::Eplg;
  throw Error(ErrorKind::Validation, "unknown aggregation: " + s);
}

std::string to_string(Aggregation a) {
  switch (a) {
    case Aggregation::Linear: return "linear";
    case Aggregation::Bseq: return "bseq";
    case Aggregation::Eplg: return "eplg";
  }
  return "linear";
}

double SeriesComponent::effective_scale() const {
  return n_ref ? *n_ref : effective_width(widths);
}

json SeriesComponent::to_json() const {
  json j = {{"label", label},         {"benchmark", benchmark},
            {"metric", metric},       {"selector", selector},
            {"direction", to_string(direction)}, {"aggregation", to_string(aggregation)}};
  if (!widths.empty()) j["widths"] = widths;
  if (n_ref) j["n_ref"] = *n_ref;
  return j;
}

SeriesComponent SeriesComponent::from_json(const json& j) {
  SeriesComponent c;
  c.benchmark = j.at("benchmark").get<std::string>();
  c.label = j.value("label", c.benchmark);
  c.metric = j.value("metric", std::string());
  c.selector = j.value("selector", json::object());
  c.widths = j.value("widths", std::vector<int>{});
  if (j.contains("n_ref")) c.n_ref = j.at("n_ref").get<double>();
  c.direction = direction_from_string(j.value("direction", std::string("higher_better")));
  c.aggregation = aggregation_from_string(j.value("aggregation", std::string("linear")));
  if (c.widths.empty() && !c.n_ref) {
    throw Error(ErrorKind::Validation, "component " + c.label + " needs widths or n_ref");
  }
  if (c.n_ref && !(*c.n_ref > 0.0)) {
    throw Error(ErrorKind::Validation, "component " + c.label + ": n_ref must be positive");
  }
  for (int w : c.widths) {
    if (w <= 0) throw Error(ErrorKind::Validation, "component " + c.label + ": widths must be positive");
  }
  if (c.aggregation != Aggregation::Bseq && c.metric.empty()) {
    throw Error(ErrorKind::Validation, "component " + c.label + " needs a metric");
  }
  if (c.aggregation == Aggregation::Eplg && c.widths.empty()) {
    throw Error(ErrorKind::Validation, "component " + c.label + ": eplg aggregation needs widths");
  }
  return c;
}

std::vector<std::string> SeriesSpec::labels() const {
  std::vector<std::string> out;
  for (const auto& c : components) out.push_back(c.label);
  return out;
}

std::map<std::string, double> SeriesSpec::weights() const {
  std::map<std::string, double> mu;
  for (const auto& c : components) mu[c.label] = c.effective_scale();
  return benchmark_weights(mu);
}

json SeriesSpec::to_json() const {
  json comps = json::array();
  for (const auto& c : components) comps.push_back(c.to_json());
  return {{"series", series}, {"baseline_device", baseline_device}, {"components", comps}};
}

SeriesSpec SeriesSpec::from_json(const json& j) {
  SeriesSpec s;
  try {
    s.series = j.at("series").get<std::string>();
    s.baseline_device = j.at("baseline_device").get<std::string>();
    for (const auto& c : j.at("components")) s.components.push_back(SeriesComponent::from_json(c));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Validation, std::string("malformed series spec: ") + e.what());
  }
  if (s.components.empty()) throw Error(ErrorKind::Validation, "series has no components");
  auto labels = s.labels();
  std::sort(labels.begin(), labels.end());
  if (std::adjacent_find(labels.begin(), labels.end()) != labels.end()) {
    throw Error(ErrorKind::Validation, "series labels must be unique");
  }
  return s;
}

SeriesSpec SeriesSpec::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorKind::NotFound, "series file not found: " + file.string());
  try {
    return from_json(json::parse(in));
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Validation, "series file " + file.string() + ": " + e.what());
  }
}

// ---------------------------------------------------------------- tables

namespace {

bool selector_matches(const json& selector, const json& params) {
  for (const auto& [k, v] : selector.items()) {
    if (!params.contains(k) || params.at(k) != v) return false;
  }
  return true;
}

std::optional<int> record_width(const BenchmarkRecord& r) {
  for (const char* key : {"num_qubits", "width", "num_qubits_in_chain"}) {
    if (r.params.contains(key) && r.params.at(key).is_number_integer()) return r.params.at(key).get<int>();
  }
  if (r.results.contains("num_qubits") && r.results.at("num_qubits").is_number_integer()) {
    return r.results.at("num_qubits").get<int>();
  }
  return std::nullopt;
}

struct Pick {
  double value;
  std::string id;
};

// Latest value per width. \p records is sorted oldest first, so later
// entries overwrite earlier ones.
std::map<int, Pick> values_by_width(const std::vector<const BenchmarkRecord*>& records,
                                    const std::string& metric) {
  std::map<int, Pick> out;
  for (const auto* r : records) {
    auto it = r->results.find(metric);
    if (it == r->results.end()) continue;
    if (it->is_object()) {
      for (const auto& [k, v] : it->items()) {
        if (!v.is_number()) continue;
        try {
          out[std::stoi(k)] = {v.get<double>(), r->id};
        } catch (const std::exception&) {
        }
      }
    } else if (it->is_number()) {
      if (auto w = record_width(*r)) out[*w] = {it->get<double>(), r->id};
    }
  }
  return out;
}

struct Evaluated {
  ComponentScore score;
  std::map<int, double> widthwise;  // for eplg
  std::optional<std::pair<int, double>> bseq;
};

Evaluated evaluate(const SeriesComponent& c, const std::vector<const BenchmarkRecord*>& recs) {
  Evaluated e;
  e.score.label = c.label;
  std::set<std::string> ids;
  if (c.aggregation == Aggregation::Bseq) {
    for (const auto* r : recs) {
      const auto& res = r->results;
      if (res.contains("lccs") && res.contains("connection_fraction") &&
          res.at("lccs").is_number() && res.at("connection_fraction").is_number()) {
        e.bseq = {res.at("lccs").get<int>(), res.at("connection_fraction").get<double>()};
        e.score.raw.clear();
        e.score.raw[record_width(*r).value_or(0)] = e.bseq->first;
        ids = {r->id};
      }
    }
    if (e.bseq) e.score.aggregate = e.bseq->first;
  } else if (c.widths.empty()) {
    // whole-device benchmark: one headline value regardless of width
    for (const auto* r : recs) {
      auto it = r->results.find(c.metric);
      if (it != r->results.end() && it->is_number()) {
        e.score.raw = {{record_width(*r).value_or(0), it->get<double>()}};
        e.score.aggregate = it->get<double>();
        ids = {r->id};
      }
    }
  } else {
    auto picks = values_by_width(recs, c.metric);
    std::vector<double> vals;
    bool any = false, all = true;
    for (int w : c.widths) {
      auto it = picks.find(w);
      if (it == picks.end()) {
        vals.push_back(0.0);
        all = false;
        continue;
      }
      any = true;
      vals.push_back(it->second.value);
      e.score.raw[w] = it->second.value;
      ids.insert(it->second.id);
      if (c.aggregation == Aggregation::Eplg && it->second.value > 0.0) e.widthwise[w] = it->second.value;
    }
    const bool usable = c.aggregation == Aggregation::Eplg
                            ? !e.widthwise.empty()
                            : (c.direction == Direction::HigherBetter ? any : all);
    if (usable) e.score.aggregate = width_aggregate(vals, width_weights(c.widths));
  }
  e.score.record_ids.assign(ids.begin(), ids.end());
  return e;
}

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(6);
  ss << std::fixed << v;
  std::string s = ss.str();
  return s;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    auto b = cell.find_first_not_of(" \t\r");
    auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

}  // namespace

std::optional<double> DeviceScore::subscore(const std::string& label) const {
  for (const auto& c : components) {
    if (c.label == label) return c.subscore;
  }
  return std::nullopt;
}

const DeviceScore& ScoreTable::row(const std::string& device) const {
  for (const auto& r : rows) {
    if (r.device == device) return r;
  }
  throw Error(ErrorKind::NotFound, "no score row for device " + device);
}

json ScoreTable::to_json() const {
  json rs = json::array();
  for (const auto& r : rows) {
    json comps = json::object();
    for (const auto& c : r.components) {
      json raw = json::object();
      for (const auto& [w, v] : c.raw) raw[std::to_string(w)] = v;
      comps[c.label] = {{"raw", raw},
                        {"aggregate", c.aggregate ? json(*c.aggregate) : json(nullptr)},
                        {"subscore", c.subscore},
                        {"records", c.record_ids}};
    }
    json row = {{"device", r.device}, {"components", comps}, {"metriq_score", r.metriq_score}};
    if (r.num_qubits) row["num_qubits"] = *r.num_qubits;
    if (r.printed_score) row["printed_score"] = *r.printed_score;
    rs.push_back(row);
  }
  return {{"series", series}, {"baseline_device", baseline_device}, {"labels", labels},
          {"weights", weights}, {"rows", rs}, {"warnings", warnings}};
}

std::string ScoreTable::to_csv() const {
  std::string out = "device,qubits";
  for (const auto& l : labels) out += "," + l;
  out += ",MS\n";
  for (const auto& r : rows) {
    out += r.device + "," + (r.num_qubits ? std::to_string(*r.num_qubits) : "");
    for (const auto& c : r.components) out += "," + fmt(c.subscore);
    out += "," + fmt(r.metriq_score) + "\n";
  }
  out += "weight,";
  for (const auto& l : labels) out += "," + fmt(weights.at(l));
  out += ",1.000000\n";
  return out;
}

ScoreTable compute_score_table(const SeriesSpec& series, const std::vector<BenchmarkRecord>& records,
                               const std::vector<std::string>& devices) {
  ScoreTable t;
  t.series = series.series;
  t.baseline_device = series.baseline_device;
  t.labels = series.labels();
  t.weights = series.weights();

  std::vector<const BenchmarkRecord*> sorted;
  for (const auto& r : records) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) {
    return std::tie(a->timestamp, a->id) < std::tie(b->timestamp, b->id);
  });

  std::vector<std::string> names = devices;
  if (names.empty()) {
    std::set<std::string> seen;
    for (const auto* r : sorted) seen.insert(r->device);
    names.assign(seen.begin(), seen.end());
  }

  auto matching = [&](const SeriesComponent& c, const std::string& device) {
    std::vector<const BenchmarkRecord*> out;
    for (const auto* r : sorted) {
      if (r->device == device && r->benchmark_name == c.benchmark && selector_matches(c.selector, r->params)) {
        out.push_back(r);
      }
    }
    return out;
  };

  std::vector<Evaluated> base;
  for (const auto& c : series.components) {
    base.push_back(evaluate(c, matching(c, series.baseline_device)));
    if (!base.back().score.aggregate) {
      t.warnings.push_back("baseline " + series.baseline_device + " has no data for " + c.label);
    } else if (c.aggregation != Aggregation::Bseq && !c.widths.empty() &&
               base.back().score.raw.size() < c.widths.size()) {
      t.warnings.push_back("baseline " + series.baseline_device + " covers only part of the " +
                           c.label + " width grid");
    }
  }

  for (const auto& d : names) {
    DeviceScore row;
    row.device = d;
    std::map<std::string, double> subs;
    for (std::size_t i = 0; i < series.components.size(); ++i) {
      const SeriesComponent& c = series.components[i];
      Evaluated e = evaluate(c, matching(c, d));
      const Evaluated& b = base[i];
      if (e.score.aggregate && b.score.aggregate) {
        switch (c.aggregation) {
          case Aggregation::Linear:
            e.score.subscore = baseline_normalize(*e.score.aggregate, *b.score.aggregate, c.direction);
            break;
          case Aggregation::Bseq:
            if (b.bseq->first > 0 && b.bseq->second > 0.0) {
              e.score.subscore = bseq_score(e.bseq->first, e.bseq->second, b.bseq->first, b.bseq->second);
            }
            break;
          case Aggregation::Eplg:
            try {
              e.score.subscore = eplg_score(e.widthwise, b.widthwise, c.widths);
            } catch (const std::invalid_argument& ex) {
              t.warnings.push_back(d + " " + c.label + ": " + ex.what());
            }
            break;
        }
      }
      subs[c.label] = e.score.subscore;
      row.components.push_back(std::move(e.score));
    }
    row.metriq_score = metriq_score(subs, t.weights);
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::vector<SubscoreRow> load_subscore_csv(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorKind::NotFound, "subscore table not found: " + file.string());
  std::string line;
  std::vector<std::string> header;
  std::vector<SubscoreRow> rows;
  int lineno = 0;
  auto number = [&](const std::string& cell) -> std::optional<double> {
    if (cell.empty() || cell == "-") return std::nullopt;
    try {
      std::size_t used = 0;
      double v = std::stod(cell, &used);
      if (used != cell.size()) throw std::invalid_argument(cell);
      return v;
    } catch (const std::exception&) {
      throw Error(ErrorKind::Validation,
                  file.string() + ":" + std::to_string(lineno) + ": not a number: " + cell);
    }
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto cells = split_csv(line);
    if (header.empty()) {
      header = cells;
      if (header.size() < 3 || header[0] != "device" || header[1] != "qubits") {
        throw Error(ErrorKind::Validation, file.string() + ": header must start with device,qubits");
      }
      continue;
    }
    if (cells.size() != header.size()) {
      throw Error(ErrorKind::Validation, file.string() + ":" + std::to_string(lineno) + ": expected " +
                                             std::to_string(header.size()) + " cells");
    }
    SubscoreRow r;
    r.device = cells[0];
    if (auto q = number(cells[1])) r.num_qubits = static_cast<int>(*q);
    for (std::size_t i = 2; i < cells.size(); ++i) {
      if (header[i] == "MS") {
        r.printed_score = number(cells[i]);
      } else {
        r.subscores[header[i]] = number(cells[i]);
      }
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

ScoreTable score_table_from_subscores(const SeriesSpec& series, const std::vector<SubscoreRow>& rows) {
  ScoreTable t;
  t.series = series.series;
  t.baseline_device = series.baseline_device;
  t.labels = series.labels();
  t.weights = series.weights();
  for (const auto& in : rows) {
    DeviceScore row;
    row.device = in.device;
    row.num_qubits = in.num_qubits;
    row.printed_score = in.printed_score;
    std::map<std::string, double> subs;
    for (const auto& label : t.labels) {
      ComponentScore c;
      c.label = label;
      auto it = in.subscores.find(label);
      if (it == in.subscores.end()) {
        t.warnings.push_back(in.device + ": no column for " + label);
      } else if (it->second) {
        c.subscore = *it->second;
        c.aggregate = *it->second;
      }
      subs[label] = c.subscore;
      row.components.push_back(std::move(c));
    }
    row.metriq_score = metriq_score(subs, t.weights);
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace qbench
